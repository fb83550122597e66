//@ expect: accept
//@ stdout: 5 2 10
//@ stdout: 10
//@ stdout: 1 100
//@ stdout: 40
//@ stdout: false
fn main() {
    let mut a: [i32; 3] = [0; 3];
    a[0] = 5;
    a[1] += 2;
    a[2] = a[0] * a[1];
    println!("{} {} {}", a[0], a[1], a[2]);
    let b = [1, 2, 3, 4];
    let mut total = 0;
    let n: usize = 4;
    for i in 0..n {
        total += b[i];
    }
    println!("{}", total);
    let mut c = b;
    c[0] = 100;
    println!("{} {}", b[0], c[0]);
    let v = vec![10, 20, 30];
    let k: usize = 2;
    println!("{}", v[k] + v[0]);
    let flags: [bool; 2] = [true, false];
    println!("{}", flags[1]);
}
