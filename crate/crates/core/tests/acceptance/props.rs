//! Random propositional formulas: generation, truth tables and TPTP text.

use rand::rngs::StdRng;
use rand::Rng;

#[derive(Clone, Debug)]
pub enum Prop {
    Atom(usize),
    Top,
    Bot,
    Not(Box<Prop>),
    Bin(Conn, Box<Prop>, Box<Prop>),
}

#[derive(Clone, Copy, Debug)]
pub enum Conn {
    And,
    Or,
    Implies,
    Equiv,
    Xor,
}

impl Prop {
    /// A random formula over `atoms` atoms with at most `conns` connectives.
    pub fn random(rng: &mut StdRng, atoms: usize, conns: usize) -> Prop {
        if conns == 0 || rng.gen_ratio(1, 5) {
            return match rng.gen_range(0..12) {
                0 => Prop::Top,
                1 => Prop::Bot,
                _ => Prop::Atom(rng.gen_range(0..atoms)),
            };
        }
        if rng.gen_ratio(1, 4) {
            return Prop::Not(Box::new(Prop::random(rng, atoms, conns - 1)));
        }
        let conn = [Conn::And, Conn::Or, Conn::Implies, Conn::Equiv, Conn::Xor][rng.gen_range(0..5)];
        let left = rng.gen_range(0..conns);
        Prop::Bin(
            conn,
            Box::new(Prop::random(rng, atoms, left)),
            Box::new(Prop::random(rng, atoms, conns - 1 - left)),
        )
    }

    pub fn eval(&self, val: u32) -> bool {
        match self {
            Prop::Atom(i) => val >> i & 1 == 1,
            Prop::Top => true,
            Prop::Bot => false,
            Prop::Not(p) => !p.eval(val),
            Prop::Bin(c, p, q) => {
                let (a, b) = (p.eval(val), q.eval(val));
                match c {
                    Conn::And => a && b,
                    Conn::Or => a || b,
                    Conn::Implies => !a || b,
                    Conn::Equiv => a == b,
                    Conn::Xor => a != b,
                }
            }
        }
    }

    pub fn satisfiable(&self, atoms: usize) -> bool {
        (0..1u32 << atoms).any(|v| self.eval(v))
    }

    pub fn thf(&self) -> String {
        match self {
            Prop::Atom(i) => format!("p{i}"),
            Prop::Top => "$true".into(),
            Prop::Bot => "$false".into(),
            Prop::Not(p) => format!("~ ({})", p.thf()),
            Prop::Bin(c, p, q) => {
                let op = match c {
                    Conn::And => "&",
                    Conn::Or => "|",
                    Conn::Implies => "=>",
                    Conn::Equiv => "<=>",
                    Conn::Xor => "<~>",
                };
                format!("({} {op} {})", p.thf(), q.thf())
            }
        }
    }
}

/// A problem asserting `p` as its only axiom.
pub fn axiom_problem(p: &Prop, atoms: usize) -> String {
    let mut s = String::new();
    for i in 0..atoms {
        s.push_str(&format!("thf(p{i}_type, type, p{i}: $o).\n"));
    }
    s.push_str(&format!("thf(ax, axiom, {}).\n", p.thf()));
    s
}
