//@ expect: panic
//@ error: Overflow
//@ stdout: 2147483647
fn add(a: i32, b: i32) -> i32 {
    a + b
}

fn main() {
    let big: i32 = 2147483600;
    println!("{}", add(big, 47));
    println!("{}", add(big, 48));
}
