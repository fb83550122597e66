//@ expect: accept
//@ stdout: hi 3
//@ stdout: 2000
const LIMIT: i32 = 3;
static GREETING: &str = "hi";
static SCALE: i64 = 1000;
static mut COUNTER: u32 = 0;

fn main() {
    let mut n = 0;
    while n < LIMIT {
        n += 1;
    }
    println!("{} {}", GREETING, n);
    println!("{}", SCALE * 2);
}
