//@ expect: reject
//@ error: TypeMismatch
fn main() {
    let mut y: i32 = 0;
    y = true;
}
