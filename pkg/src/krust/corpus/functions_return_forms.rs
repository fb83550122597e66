//@ expect: accept
//@ stdout: 3
//@ stdout: 10
//@ stdout: hello
//@ stdout: 6
//@ stdout: 0
fn main() {
    println!("{}", foo(1, 2));
    println!("{}", twice(5));
    greet();
    println!("{}", early(3));
    println!("{}", early(-3));
}

fn foo(x:i32, y:i32) -> i32 {
    x+y
}

fn twice(n: i32) -> i32 {
    return n * 2;
}

fn greet() {
    println!("hello");
    return;
}

fn early(n: i32) -> i32 {
    if n < 0 {
        return 0;
    }
    let doubled = n + n;
    doubled
}
