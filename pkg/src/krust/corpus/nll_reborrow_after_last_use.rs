//@ expect: reject
//@ error: BorrowConflict
//@ stdout: 5
fn main() {
   let mut x3 = 1;
   let p3 = &mut x3;
   *p3 = 2;
   let p4 = &mut x3;
   *p4 = 5;
   println!("{}", x3);
}
