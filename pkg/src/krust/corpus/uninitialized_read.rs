//@ expect: panic
//@ error: UninitializedRead
fn main() {
    let x: i32;
    let y = x + 1;
    println!("{}", y);
}
