//@ expect: accept
//@ stdout: 22 12 85 3 2
//@ stdout: -3 -2
//@ stdout: 1 21 68 8
//@ stdout: false false true
//@ stdout: true false true
//@ stdout: false true false
//@ stdout: false
//@ stdout: true
//@ stdout: -18 3
//@ stdout: 44
//@ stdout: true
//@ stdout: false true
fn main() {
    let a = 17;
    let b = 5;
    println!("{} {} {} {} {}", a + b, a - b, a * b, a / b, a % b);
    println!("{} {}", -a / b, -a % b);
    println!("{} {} {} {}", a & b, a | b, a << 2, a >> 1);
    println!("{} {} {}", a < b, a <= b, a > b);
    println!("{} {} {}", a >= b, a == b, a != b);
    let t = true;
    let f = false;
    println!("{} {} {}", t && f, t || f, !t);
    println!("{}", f && (a / 0 == 1));
    println!("{}", t || (a / 0 == 1));
    println!("{} {}", !a, -(a - 20));
    println!("{}", (a + b) * 2);
    let c = 'c';
    println!("{}", c < 'd');
    println!("{} {}", t & f, t | f);
}
