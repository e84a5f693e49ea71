//! Domination of polynomials by poset variables.
//!
//! `f` is dominated by `x` when every monomial appearing in `f` contains a
//! variable `y` with `y <= x`. A polynomial is small when some variable
//! dominates it and big otherwise. Only the support of `f` matters here;
//! coefficients are never inspected beyond being nonzero.

use crate::error::{Error, Result};
use crate::polyring::{Degree, Monomial, Polynomial};
use crate::poset::{Poset, VarId};

/// Monomial-level test on poset indices; `x` must be a node index.
fn monomial_dominated(poset: &Poset, m: &Monomial, x: usize) -> bool {
    m.vars().any(|y| {
        poset
            .index_of(y)
            .is_ok_and(|yi| poset.leq_idx(yi, x))
    })
}

/// Whether `m` contains a variable `y <= x`.
pub fn monomial_dominated_by(poset: &Poset, m: &Monomial, x: &VarId) -> Result<bool> {
    let xi = poset.index_of(x)?;
    Ok(monomial_dominated(poset, m, xi))
}

/// `f <= x`. The zero polynomial is dominated by every node.
pub fn dominated_by(poset: &Poset, f: &Polynomial, x: &VarId) -> Result<bool> {
    let xi = poset.index_of(x)?;
    f.check_variables(poset)?;
    Ok(f.monomials().all(|m| monomial_dominated(poset, m, xi)))
}

/// The least node (by name) dominating `f`, if any.
pub fn dominating_witness(poset: &Poset, f: &Polynomial) -> Result<Option<VarId>> {
    f.check_variables(poset)?;
    Ok((0..poset.len())
        .find(|&x| f.monomials().all(|m| monomial_dominated(poset, m, x)))
        .map(|x| poset.nodes()[x].clone()))
}

pub fn is_small(poset: &Poset, f: &Polynomial) -> Result<bool> {
    Ok(dominating_witness(poset, f)?.is_some())
}

pub fn is_big(poset: &Poset, f: &Polynomial) -> Result<bool> {
    Ok(dominating_witness(poset, f)?.is_none())
}

/// Splits `f` into the part dominated by `x` and the rest.
pub fn split_at(poset: &Poset, f: &Polynomial, x: &VarId) -> Result<(Polynomial, Polynomial)> {
    let xi = poset.index_of(x)?;
    f.check_variables(poset)?;
    let dominated = f.filter_terms(|m| monomial_dominated(poset, m, xi));
    let rest = f.filter_terms(|m| !monomial_dominated(poset, m, xi));
    Ok((dominated, rest))
}

/// `x^d * f + g`, requiring `d > deg g` so that no monomial of `x^d * f`
/// can cancel against one of `g`.
pub fn degree_shift(x: &VarId, d: u32, f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    if d == 0 || Degree::Finite(d as u64) <= g.degree() {
        return Err(Error::Precondition(format!(
            "shift exponent {d} must be positive and exceed deg g = {}",
            g.degree()
        )));
    }
    let shifted = f.mul_monomial(&Monomial::var_pow(x.clone(), d));
    Ok(&shifted + g)
}
