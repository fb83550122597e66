//@ expect: accept
//@ stdout: 1
//@ stdout: 2
fn main(){
   let z = 1;
   let p = &z;
   println!("{}", *p);
   let q;
   q = &z;
   println!("{}", *q + *p);
}
