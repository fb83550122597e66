//@ expect: accept
//@ stdout: 2 2
//@ stdout: 30
//@ stdout: 2 14
//@ stdout: 255 true
//@ stdout: 97
struct Point {
    x: i32,
    y: i32,
}

fn main() {
    let p = Point { x: 1, y: 2 };
    {
        let mut q = p;
        q.x = 2;
        println!("{} {}", q.x, q.y);
        let mut r = Point { x: 10, y: 20, };
        println!("{}", r.x + r.y);
        r = q;
        r.y = r.y * 7;
        println!("{} {}", r.x, r.y);
    }
    struct Pair {
        left: u8,
        right: bool,
    }
    let mut pr = Pair { right: true, left: 200 };
    pr.left = pr.left + 55;
    println!("{} {}", pr.left, pr.right);
    let pt: Point = Point { x: -4, y: 9 };
    let dist = pt.x * pt.x + pt.y * pt.y;
    println!("{}", dist);
}
