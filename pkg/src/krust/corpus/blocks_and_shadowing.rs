//@ expect: accept
//@ stdout: 1 22
//@ stdout: 5
//@ stdout: 101
//@ stdout: 3
fn main() {
    let x = 1;
    let y = {
        let x = x + 10;
        x * 2
    };
    println!("{} {}", x, y);
    {
    }
    {
        let x = 5;
        println!("{}", x);
    }
    let x = x + 100;
    println!("{}", x);
    let z = { 3 };
    println!("{}", z);
}
