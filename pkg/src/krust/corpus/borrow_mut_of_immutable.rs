//@ expect: reject
//@ error: MutBorrowOfImmutable
fn main() {
   let x1 = 1;
   let p1 = &x1;
   let q1 = &x1;
   let y = &mut x1;
}
