//@ expect: reject
//@ error: WriteThroughSharedRef
fn set(p: &i32) {
    *p = 1;
}

fn main() {
    let mut x = 0;
    set(&x);
}
