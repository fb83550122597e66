//@ expect: reject
//@ error: BorrowConflict
fn main() {
   let mut x3 = 1;
   let p3 = &mut x3;
   let p4 = &mut x3;
   *p3 = 2;
   *p4 = 3;
}
