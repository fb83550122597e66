//@ expect: reject
//@ error: ArityMismatch
fn foo(x: i32, y: i32) -> i32 {
    x + y
}

fn main() {
    println!("{}", foo(1));
}
