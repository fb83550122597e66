//@ expect: accept
//@ stdout: 42
//@ stdout: 6
//@ stdout: 144
//@ stdout: 4
fn double(n: i32) -> i32 {
    n * 2
}

fn gcd(a: i32, b : i32) -> i32 {
    if a!=b {
        if a>b { return gcd(a-b, b); }
        else   { return gcd(a, b-a); }
    }else { return a; }
}

fn nothing() -> () {
}

fn main() {
    let f: fn(i32) -> i32 = double;
    println!("{}", f(21));
    println!("{}", gcd(48, 18));
    fn inner(x: u64) -> u64 {
        x * x
    }
    println!("{}", inner(12));
    nothing();
    let u = nothing();
    println!("{}", f(f(1)));
}
