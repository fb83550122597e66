fn main(){
  let x=9;
  x=10; // Error!
  let mut y = 0;
  let mut z: bool;
}
