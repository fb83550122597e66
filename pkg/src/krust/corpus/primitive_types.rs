//@ expect: accept
//@ stdout: -128 255 -32768 65535
//@ stdout: -2147483648 4294967295 -9223372036854775808 18446744073709551615
//@ stdout: -5 7
//@ stdout: 3 0.30000000000000004 0.30000000000000004
//@ stdout: z text false
//@ stdout: 3.5
fn main() {
    let a: i8 = -128;
    let b: u8 = 255;
    let c: i16 = -32768;
    let d: u16 = 65535;
    let e: i32 = -2147483648;
    let f: u32 = 4294967295;
    let g: i64 = -9223372036854775808;
    let h: u64 = 18446744073709551615;
    let i: isize = -5;
    let j: usize = 7;
    let k: f32 = 1.5;
    let l: f64 = 0.1;
    let m: char = 'z';
    let n: &str = "text";
    let o: bool = false;
    println!("{} {} {} {}", a, b, c, d);
    println!("{} {} {} {}", e, f, g, h);
    println!("{} {}", i, j);
    println!("{} {} {}", k * 2.0, l + 0.2, l * 3.0);
    println!("{} {} {}", m, n, o);
    println!("{}", 7.0 / 2.0);
}
