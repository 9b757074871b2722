//! Products `(T_e + T_s1)(T_e + T_s2)...` expanded over subexpressions.

use crate::error::{Error, Result};
use crate::group::SignedPermutation;
use crate::hecke::HeckeElement;
use crate::poly::QPoly;

/// `Σ_σ q^dfct(σ) T_(σ_1 ... σ_k)` over all `2^k` subexpressions `σ` of the
/// word `gens`. Index `j` is a defect when `σ_1 ... σ_(j-1) s_(i_j)` is
/// shorter than `σ_1 ... σ_(j-1)`.
///
/// ```
/// use hecke_bc::deodhar::deodhar_expand;
/// let h = deodhar_expand(&[0, 0], 1).unwrap();
/// assert_eq!(h.to_string(), "(1 + q)T[1] + (1 + q)T[-1]");
/// ```
pub fn deodhar_expand(gens: &[usize], n: usize) -> Result<HeckeElement> {
    let mut out = HeckeElement::zero(n)?;
    if let Some(&i) = gens.iter().find(|&&i| i >= n) {
        return Err(Error::GeneratorOutOfRange { index: i, rank: n });
    }
    let mut walk = |w: SignedPermutation, d: usize| out.add_term_unchecked(w, &QPoly::monomial(1, d));
    expand(gens, SignedPermutation::identity_unchecked(n), 0, &mut walk);
    Ok(out)
}

fn expand(gens: &[usize], w: SignedPermutation, d: usize, visit: &mut dyn FnMut(SignedPermutation, usize)) {
    let Some((&i, rest)) = gens.split_first() else {
        visit(w, d);
        return;
    };
    let ws = w.mul_generator(i);
    let defect = usize::from(w.is_right_descent(i));
    expand(rest, w, d + defect, visit);
    expand(rest, ws, d + defect, visit);
}
