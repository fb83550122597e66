//@ expect: reject
//@ error: UseAfterMove
struct Point{
   x: i32,
   y: i32,
}
fn main(){
  let p = Point {x:1, y:2};
  {
    let mut q = p;
    q.x = 2;
    println!("{}",p.x);
  }
}
