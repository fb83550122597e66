//@ expect: panic
//@ error: DivideByZero
//@ stdout: 42
fn zero() -> i64 {
    0
}

fn main() {
    let n: i64 = 84;
    println!("{}", n / 2);
    println!("{}", n % zero());
}
