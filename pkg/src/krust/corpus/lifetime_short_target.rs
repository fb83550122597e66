//@ expect: reject
//@ error: LifetimeError
fn main(){
   let mut x ;
   {
     let y = 1;
     x = &y;
   }
   println!("{}", x);
}
