//@ expect: reject
//@ error: UnboundIdentifier
fn main() {
    let a = 1;
    println!("{}", a + c);
}
