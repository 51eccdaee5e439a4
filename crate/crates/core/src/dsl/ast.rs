use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::scalar::Scalar;

/// Named constants. `phi`, `psi` live in the dual and `phihat`, `psihat` in
/// the quantum group itself, so each can be paired with a variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Constant {
    Unit,
    Epsilon,
    Sigma,
    Delta,
    Phi,
    Psi,
    PhiHat,
    PsiHat,
}

impl Constant {
    pub fn name(self) -> &'static str {
        match self {
            Constant::Unit => "unit",
            Constant::Epsilon => "epsilon",
            Constant::Sigma => "sigma",
            Constant::Delta => "delta",
            Constant::Phi => "phi",
            Constant::Psi => "psi",
            Constant::PhiHat => "phihat",
            Constant::PsiHat => "psihat",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Some(match s {
            "unit" => Constant::Unit,
            "epsilon" => Constant::Epsilon,
            "sigma" => Constant::Sigma,
            "delta" => Constant::Delta,
            "phi" => Constant::Phi,
            "psi" => Constant::Psi,
            "phihat" => Constant::PhiHat,
            "psihat" => Constant::PsiHat,
            _ => return None,
        })
    }

    pub(crate) fn has_power(self) -> bool {
        matches!(self, Constant::Sigma | Constant::Delta)
    }
}

/// Unary linear maps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MapName {
    S,
    Sinv,
    S2,
    /// Twisted Fourier transform of the dual pair, `H → Ĥ`.
    F,
    /// Twisted Fourier transform `Ĥ → H`.
    Fhat,
    Fl,
    Fr,
    Gl,
    Gr,
    /// `Ĝ_l: Ĥ → H`.
    Glhat,
    Counit,
}

impl MapName {
    pub fn name(self) -> &'static str {
        match self {
            MapName::S => "S",
            MapName::Sinv => "Sinv",
            MapName::S2 => "S2",
            MapName::F => "F",
            MapName::Fhat => "Fhat",
            MapName::Fl => "Fl",
            MapName::Fr => "Fr",
            MapName::Gl => "Gl",
            MapName::Gr => "Gr",
            MapName::Glhat => "Glhat",
            MapName::Counit => "counit",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Some(match s {
            "S" => MapName::S,
            "Sinv" => MapName::Sinv,
            "S2" => MapName::S2,
            "F" => MapName::F,
            "Fhat" => MapName::Fhat,
            "Fl" => MapName::Fl,
            "Fr" => MapName::Fr,
            "Gl" => MapName::Gl,
            "Gr" => MapName::Gr,
            "Glhat" => MapName::Glhat,
            "counit" => MapName::Counit,
            _ => return None,
        })
    }
}

/// Sweedler-notation expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    /// Nonnegative rational literal; negation is [`Expr::Neg`].
    Num(Scalar),
    /// `t`, or the leg `t(k)`. For algebra variables `a(0)`, `a(1)`, …
    /// are coaction legs.
    Var { name: String, leg: Option<u32> },
    /// `sigma^-1`, `psihat(2)`, `psihat[1](2)`.
    Const {
        c: Constant,
        copy: Option<u32>,
        power: i32,
        leg: Option<u32>,
    },
    Map { map: MapName, arg: Box<Expr> },
    /// `act(x, a)` is `x · a`.
    Act(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    /// `x .> y`: `x` acts on `y` from the left.
    HitLeft(Box<Expr>, Box<Expr>),
    /// `y <. x`: `x` acts on `y` from the right.
    HitRight(Box<Expr>, Box<Expr>),
    /// `f(x)`: evaluation of one side on the other.
    Pair(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    /// Tensor positions joined by `@`.
    Tensor(Vec<Expr>),
}

impl Expr {
    pub fn var(name: &str) -> Expr {
        Expr::Var {
            name: name.to_string(),
            leg: None,
        }
    }

    pub fn leg(name: &str, k: u32) -> Expr {
        Expr::Var {
            name: name.to_string(),
            leg: Some(k),
        }
    }

    pub fn constant(c: Constant) -> Expr {
        Expr::Const {
            c,
            copy: None,
            power: 1,
            leg: None,
        }
    }

    pub fn map(map: MapName, arg: Expr) -> Expr {
        Expr::Map {
            map,
            arg: Box::new(arg),
        }
    }

    pub fn mul(a: Expr, b: Expr) -> Expr {
        Expr::Mul(Box::new(a), Box::new(b))
    }

    pub fn act(x: Expr, a: Expr) -> Expr {
        Expr::Act(Box::new(x), Box::new(a))
    }

    pub fn pair(f: Expr, x: Expr) -> Expr {
        Expr::Pair(Box::new(f), Box::new(x))
    }

    pub fn hit_left(x: Expr, y: Expr) -> Expr {
        Expr::HitLeft(Box::new(x), Box::new(y))
    }

    pub fn hit_right(y: Expr, x: Expr) -> Expr {
        Expr::HitRight(Box::new(y), Box::new(x))
    }

    /// Left-nested product of the factors; `None` when empty.
    pub fn product(factors: impl IntoIterator<Item = Expr>) -> Option<Expr> {
        factors.into_iter().reduce(Expr::mul)
    }

    fn level(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) | Expr::Neg(..) => 0,
            Expr::Tensor(..) => 1,
            Expr::Mul(..) => 2,
            Expr::HitLeft(..) | Expr::HitRight(..) => 3,
            _ => 4,
        }
    }
}

fn write_at(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    if e.level() < min {
        write!(f, "(")?;
        write!(f, "{e}")?;
        write!(f, ")")
    } else {
        write!(f, "{e}")
    }
}

fn text_at(e: &Expr, min: u8) -> String {
    if e.level() < min {
        alloc::format!("({e})")
    } else {
        e.to_string()
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(x) => write!(f, "{x}"),
            Expr::Var { name, leg } => {
                write!(f, "{name}")?;
                if let Some(k) = leg {
                    write!(f, "({k})")?;
                }
                Ok(())
            }
            Expr::Const { c, copy, power, leg } => {
                write!(f, "{}", c.name())?;
                if let Some(k) = copy {
                    write!(f, "[{k}]")?;
                }
                if *power != 1 {
                    write!(f, "^{power}")?;
                }
                if let Some(k) = leg {
                    write!(f, "({k})")?;
                }
                Ok(())
            }
            Expr::Map { map, arg } => write!(f, "{}({arg})", map.name()),
            Expr::Act(x, a) => write!(f, "act({x}, {a})"),
            Expr::Mul(a, b) => {
                write_at(f, a, 2)?;
                let rhs = text_at(b, 3);
                if rhs.starts_with('(') || matches!(**b, Expr::Num(_)) {
                    write!(f, " * {rhs}")
                } else {
                    write!(f, " {rhs}")
                }
            }
            Expr::HitLeft(x, y) => {
                write_at(f, x, 4)?;
                write!(f, " .> ")?;
                write_at(f, y, 3)
            }
            Expr::HitRight(y, x) => {
                if matches!(**y, Expr::HitLeft(..)) {
                    write!(f, "({y})")?;
                } else {
                    write_at(f, y, 3)?;
                }
                write!(f, " <. ")?;
                write_at(f, x, 4)
            }
            Expr::Pair(g, x) => {
                if matches!(**g, Expr::Num(_)) {
                    write!(f, "({g})")?;
                } else {
                    write_at(f, g, 4)?;
                }
                write!(f, "({x})")
            }
            Expr::Neg(x) => {
                write!(f, "-")?;
                write_at(f, x, 1)
            }
            Expr::Add(a, b) => {
                write!(f, "{a} + ")?;
                write_at(f, b, 1)
            }
            Expr::Sub(a, b) => {
                write!(f, "{a} - ")?;
                write_at(f, b, 1)
            }
            Expr::Tensor(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, " @ ")?;
                    }
                    write_at(f, p, 2)?;
                }
                Ok(())
            }
        }
    }
}
