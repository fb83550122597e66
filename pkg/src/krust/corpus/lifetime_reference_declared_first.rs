//@ expect: reject
//@ error: LifetimeError
//@ stdout: 5
fn main(){
   let mut x;
   let w = 5;
   {
       x = &w;
   }
   println!("{}", *x);
}
