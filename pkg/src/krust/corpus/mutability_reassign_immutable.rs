//@ expect: reject
//@ error: AssignToImmutable
fn main(){
  let x=9;
  x=10;
  let mut y = 0;
  let mut z: bool;
}
