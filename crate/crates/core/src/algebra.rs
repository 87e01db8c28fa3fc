//! Multivariate gcd over `ℚ` and the squarefree-polynomial verdict.
//!
//! The gcd is computed recursively: view both inputs as univariate in their
//! highest variable with coefficients in the remaining ones, split off the
//! content (a recursive gcd of coefficients), and run a primitive
//! pseudo-remainder sequence on the primitive parts.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::poly::Polynomial;

/// Outcome of [`squarefree_verdict`].
///
/// When `is_squarefree` is false the witness is a non-constant `L` with
/// `L^2` dividing the input exactly; otherwise there is no witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquarefreenessVerdict {
    pub is_squarefree: bool,
    pub witness: Option<Polynomial>,
}

/// Primitive, sign-normalized gcd of `a` and `b` over `ℚ`.
///
/// `gcd(a, 0)` is `a.primitive_part()`; the gcd of two constants is `1`.
pub fn multivariate_gcd(a: &Polynomial, b: &Polynomial) -> Result<Polynomial> {
    if a.arity() != b.arity() {
        return Err(Error::ArityMismatch {
            expected: a.arity(),
            got: b.arity(),
        });
    }
    if a.is_zero() && b.is_zero() {
        return Err(Error::BothZero);
    }
    Ok(gcd_z(a, b).primitive_part())
}

/// gcd in `ℤ[X]`, integer content included, positive leading coefficient.
fn gcd_z(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_zero() {
        return b.normalize_sign();
    }
    if b.is_zero() {
        return a.normalize_sign();
    }
    let arity = a.arity();
    let var = match (a.max_var(), b.max_var()) {
        (None, None) => {
            let g = a
                .constant_value()
                .unwrap()
                .gcd(&b.constant_value().unwrap());
            return Polynomial::constant(arity, g);
        }
        (x, y) => x.max(y).unwrap(),
    };

    let ca = a.coefficients_in(var);
    let cb = b.coefficients_in(var);
    if ca.len() == 1 {
        return gcd_z(a, &content_of(&cb));
    }
    if cb.len() == 1 {
        return gcd_z(&content_of(&ca), b);
    }

    let (cont_a, cont_b) = (content_of(&ca), content_of(&cb));
    let cont = gcd_z(&cont_a, &cont_b);
    let mut f = divide_all(&ca, &cont_a);
    let mut g = divide_all(&cb, &cont_b);
    if f.len() < g.len() {
        std::mem::swap(&mut f, &mut g);
    }
    let prim = loop {
        let r = pseudo_remainder(&f, &g);
        match r.len() {
            0 => break g,
            1 => break vec![Polynomial::constant(arity, 1)],
            _ => {
                let cr = content_of(&r);
                f = g;
                g = divide_all(&r, &cr);
            }
        }
    };
    (&cont * &Polynomial::from_coefficients_in(arity, var, &prim)).normalize_sign()
}

/// gcd of a list of polynomials in `ℤ[X]`.
fn content_of(coeffs: &[Polynomial]) -> Polynomial {
    let mut acc = Polynomial::zero(coeffs[0].arity());
    for c in coeffs {
        acc = gcd_z(&acc, c);
        if acc.constant_value().is_some_and(|v| v == 1.into()) {
            break;
        }
    }
    acc
}

fn divide_all(coeffs: &[Polynomial], d: &Polynomial) -> Vec<Polynomial> {
    coeffs
        .iter()
        .map(|c| c.div_exact(d).expect("content divides every coefficient"))
        .collect()
}

/// Pseudo-remainder of `f` by `g`, both given as coefficient vectors in one
/// variable (lowest degree first, no trailing zeros). The result has degree
/// below `g` and satisfies `lc(g)^k f = q g + r` for some `k` and `q`.
fn pseudo_remainder(f: &[Polynomial], g: &[Polynomial]) -> Vec<Polynomial> {
    let dg = g.len() - 1;
    let lc = &g[dg];
    let mut r = f.to_vec();
    while r.len() > dg {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - dg;
        for c in r.iter_mut() {
            *c = &*c * lc;
        }
        for (j, gj) in g.iter().enumerate() {
            r[j + shift] = &r[j + shift] - &(&lr * gj);
        }
        while r.last().is_some_and(Polynomial::is_zero) {
            r.pop();
        }
    }
    r
}

/// Decides whether `p` has a non-constant square factor over `ℚ`.
///
/// Uses `G = gcd(p, ∂p/∂x1, …, ∂p/∂xs)`: in characteristic zero `p` has a
/// repeated factor iff `G` is non-constant. The witness is refined by
/// `G <- gcd(G, p / G)` until `G^2 | p`.
pub fn squarefree_verdict(p: &Polynomial) -> Result<SquarefreenessVerdict> {
    if p.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    let mut g = p.primitive_part();
    for i in 0..p.arity() {
        let d = p.partial_derivative(i)?;
        if !d.is_zero() {
            g = gcd_z(&g, &d);
        }
        if g.is_constant() {
            break;
        }
    }
    let mut g = g.primitive_part();
    while !g.is_constant() {
        if p.div_exact(&(&g * &g)).is_some() {
            return Ok(SquarefreenessVerdict {
                is_squarefree: false,
                witness: Some(g),
            });
        }
        let cofactor = p
            .div_exact(&g)
            .ok_or_else(|| Error::Invariant(format!("gcd {g} does not divide {p}")))?;
        let next = gcd_z(&g, &cofactor).primitive_part();
        if next.total_degree() >= g.total_degree() {
            return Err(Error::Invariant(format!(
                "witness refinement stalled at {g} for {p}"
            )));
        }
        g = next;
    }
    if g != Polynomial::constant(p.arity(), 1) {
        return Err(Error::Invariant(format!("non-unit constant gcd {g}")));
    }
    Ok(SquarefreenessVerdict {
        is_squarefree: true,
        witness: None,
    })
}
