//@ expect: reject
//@ error: WriteThroughSharedRef
fn main() {
   let mut x2 = 1;
   let p2 = &x2;
   let q2 = &x2;
   *p2 = 2;
}
