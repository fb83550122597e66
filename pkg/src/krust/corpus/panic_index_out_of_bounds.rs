//@ expect: panic
//@ error: IndexOutOfBounds
//@ stdout: before
fn three() -> usize {
    3
}

fn main() {
    let a = [1, 2, 3];
    println!("before");
    println!("{}", a[three()]);
    println!("after");
}
