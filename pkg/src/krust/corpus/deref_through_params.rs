//@ expect: accept
//@ stdout: 3
//@ stdout: 30
//@ stdout: -3
fn bump(p: &mut i32) {
    *p = *p + 1;
}

fn read(p: &i32) -> i32 {
    *p * 10
}

fn main() {
    let mut x = 1;
    bump(&mut x);
    bump(&mut x);
    println!("{}", x);
    println!("{}", read(&x));
    let r = &mut x;
    *r -= 5;
    *r *= 3;
    *r /= 2;
    println!("{}", *r);
}
