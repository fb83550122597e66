//@ expect: accept
//@ stdout: 1 2
//@ stdout: 42
//@ stdout: 84
//@ stdout: 84
//@ stdout: 1
//@ stdout: 84
fn main() {
    let x1 = 1;
    let p1 = &x1;
    let q1 = &x1;
    println!("{} {}", *p1, *q1 + 1);
    let mut x3 = 1;
    {
        let p3 = &mut x3;
        *p3 = 2;
        *p3 += 40;
        println!("{}", *p3);
    }
    {
        let p4 = &mut x3;
        *p4 = *p4 * 2;
    }
    println!("{}", x3);
    let r = &x3;
    println!("{}", r);
    let mut holder: &i32 = &x1;
    println!("{}", *holder);
    holder = &x3;
    println!("{}", *holder);
}
