//@ expect: accept
//@ stdout: 7 70
struct Account {
    id: u32,
    balance: i64,
}

fn main() {
    let mut acct = Account { id: 7, balance: 100 };
    {
        let b = &mut acct.balance;
        *b = *b - 30;
    }
    let id = &acct.id;
    println!("{} {}", *id, acct.balance);
}
