//@ expect: accept
//@ stdout: 0
//@ stdout: 10
//@ stdout: 10
//@ stdout: 8
fn first_square_above(limit: i32) -> i32 {
    let mut i = 0;
    loop {
        if i * i > limit {
            return i;
        }
        i += 1;
    }
}

fn main() {
    let mut x: i32 = 10;
    while x > 0 {
        x = x - 1;
    }
    println!("{}", x);
    let mut s = 0;
    for i in 0..5 {
        s = s + i;
    }
    println!("{}", s);
    let mut acc = 1;
    for _k in 1..4 {
        acc *= 3;
    }
    acc -= 7;
    acc /= 2;
    println!("{}", acc);
    println!("{}", first_square_above(50));
}
