use num_bigint::BigInt;

use super::poly::{Monomial, MultiPoly, Var};
use crate::alt::{AltGroup, EvenLeaf};
use crate::engine::Caps;
use crate::error::{Error, Result};

/// Which statistic a generating function records.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Statistic {
    /// `sum_W q^l_S`
    Length,
    /// `sum_W q0^l_0 q^nu`; needs evenly-laced `s0`.
    Ell0Nu,
    /// `sum_{W+} q^l_R`
    EllR,
    /// `sum_{W+} t^hatDes q^l_R`, one variable `t_i` per generator.
    HatDesEllR,
    /// `sum_{W+} t^hatNasc q^l_R`
    HatNascEllR,
    /// `sum_{W+} t^des q^l_R` with a single variable `t`.
    DesEllR,
    /// `sum_{W^{s0}} t^Des_S q^nu`
    AmbientDesNu,
    /// `sum_{W'} t^des q^l_{S'}`; needs an even leaf.
    PrimeDesLength,
}

impl Statistic {
    pub const ALL: [Statistic; 8] = [
        Statistic::Length,
        Statistic::Ell0Nu,
        Statistic::EllR,
        Statistic::HatDesEllR,
        Statistic::HatNascEllR,
        Statistic::DesEllR,
        Statistic::AmbientDesNu,
        Statistic::PrimeDesLength,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Statistic::Length => "length",
            Statistic::Ell0Nu => "ell0-nu",
            Statistic::EllR => "ellR",
            Statistic::HatDesEllR => "hatdes-ellR",
            Statistic::HatNascEllR => "hatnasc-ellR",
            Statistic::DesEllR => "des-ellR",
            Statistic::AmbientDesNu => "ambient-des-nu",
            Statistic::PrimeDesLength => "prime-des-length",
        }
    }

    pub fn parse(text: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|s| s.name() == text)
    }
}

fn mono(q0: usize, q: usize, ts: impl IntoIterator<Item = usize>, t: usize) -> Monomial {
    let mut m = Monomial::var(Var::Q0, q0 as u32)
        .times(&Monomial::var(Var::Q, q as u32))
        .times(&Monomial::var(Var::T, t as u32));
    for i in ts {
        m = m.times(&Monomial::var(Var::Ti(i), 1));
    }
    m
}

/// Sums the chosen statistic over the enumerated set.
pub fn gf_enumerated(a: &AltGroup, stat: Statistic) -> Result<MultiPoly> {
    let g = a.group();
    let mut out = MultiPoly::zero();
    let one = || BigInt::from(1);
    match stat {
        Statistic::Length => {
            for w in g.ids() {
                out.add_term(mono(0, g.length(w), [], 0), one());
            }
        }
        Statistic::Ell0Nu => {
            for w in g.ids() {
                out.add_term(mono(g.ell0(w)?, g.nu(w), [], 0), one());
            }
        }
        Statistic::EllR => {
            for &w in a.members() {
                out.add_term(mono(0, a.ell(w), [], 0), one());
            }
        }
        Statistic::HatDesEllR | Statistic::HatNascEllR => {
            for &w in a.members() {
                let s = a.descent_stats(w);
                let set = if stat == Statistic::HatDesEllR {
                    s.hat_des
                } else {
                    s.hat_nasc
                };
                out.add_term(mono(0, a.ell(w), set, 0), one());
            }
        }
        Statistic::DesEllR => {
            for &w in a.members() {
                let d = a.descent_stats(w).des.len();
                out.add_term(mono(0, a.ell(w), [], d), one());
            }
        }
        Statistic::AmbientDesNu => {
            for w in g.ids().filter(|&w| !g.has_right_descent(w, 0)) {
                out.add_term(mono(0, g.nu(w), g.right_descents(w), 0), one());
            }
        }
        Statistic::PrimeDesLength => {
            let leaf = EvenLeaf::with_caps(a.system(), Caps::from_env()?)?;
            let p = leaf.prime();
            for w in p.ids() {
                out.add_term(mono(0, p.length(w), [], p.right_descents(w).len()), one());
            }
        }
    }
    Ok(out)
}

/// `[ W(S; q0, q) / (1 + q0) ]_{q0 = 1}`.
pub fn gf_plus_from_quotient(a: &AltGroup) -> Result<MultiPoly> {
    if !a.system().classify_node().evenly_laced {
        return Err(Error::EvenlyLacedRequired);
    }
    let full = gf_enumerated(a, Statistic::Ell0Nu)?;
    let divisor: MultiPoly = &MultiPoly::one() + &MultiPoly::var(Var::Q0);
    Ok(full.div_exact(&divisor)?.eval_var(Var::Q0, 1))
}
