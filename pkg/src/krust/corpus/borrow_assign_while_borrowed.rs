//@ expect: reject
//@ error: BorrowConflict
fn main() {
   let mut x3 = 1;
   let p3 = &mut x3;
   x3 = 2;
   *p3 = 2;
}
