use crate::error::{Error, Result};
use crate::field::RationalFunction;
use crate::forms::{dlog, DifferentialForm};
use crate::laurent::class::{LaurentClass, LaurentField};

/// A valued extension L₁((ρ)) / K₁((π)) given by `π = u · ρ^e` with `u` a
/// unit of L₁.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuedExtension {
    pub source: LaurentField,
    pub target: LaurentField,
    pub e: u32,
    pub u: RationalFunction,
}

impl ValuedExtension {
    pub fn new(source: &LaurentField, target: &LaurentField, e: u32, u: RationalFunction) -> Result<Self> {
        if e == 0 {
            return Err(Error::Precondition("ramification index must be positive".into()));
        }
        target.base().ensure_same(u.cfg())?;
        if u.is_zero() {
            return Err(Error::Precondition("u must be a unit".into()));
        }
        if source.characteristic() != target.characteristic() || source.base().degree() > target.base().degree() {
            return Err(Error::Config("constant fields are incompatible".into()));
        }
        source.base().embedding_into(target.base())?;
        Ok(Self {
            source: source.clone(),
            target: target.clone(),
            e,
            u: u.clone(),
        })
    }

    fn dlog_u(&self) -> DifferentialForm {
        dlog(&self.u).expect("u is nonzero")
    }

    fn u_pow(&self, k: i64) -> RationalFunction {
        self.u.pow(k).expect("u is nonzero")
    }
}

/// Pulls a class back along `π = u ρ^e`: the component at pole `k` moves to
/// pole `e k` with
/// `ω' = u^{-k}(ω + ν ∧ dlog u)` and `ν' = e u^{-k} ν`.
pub fn extend_scalars(f: &LaurentClass, ext: &ValuedExtension) -> Result<LaurentClass> {
    if f.field() != &ext.source {
        return Err(Error::ConfigMismatch);
    }
    let tb = ext.target.base();
    let n = f.degree();
    let mut out = LaurentClass::zero(&ext.target, n);
    for (k, c) in f.components() {
        let omega = c.omega.transfer(tb)?;
        let nu = if n > 0 { c.nu.transfer(tb)? } else { out.zero_nu() };
        let (w, v) = psi_pair(ext, *k as i64, &omega, &nu);
        out.add_component(ext.e as u64 * k, &w, &v)?;
    }
    Ok(out)
}

fn psi_pair(
    ext: &ValuedExtension,
    m: i64,
    omega: &DifferentialForm,
    nu: &DifferentialForm,
) -> (DifferentialForm, DifferentialForm) {
    let s = ext.u_pow(-m);
    if omega.degree() == 0 {
        return (omega.scale(&s), nu.clone());
    }
    let w = omega.add(&nu.wedge(&ext.dlog_u())).scale(&s);
    let v = nu.scale(&s.scale(ext.target.base().field().from_int(ext.e as i64)));
    (w, v)
}

/// ψ_m for `p ∤ e m`: `α ↦ ū^{-m} α`.
pub fn psi_unramified(ext: &ValuedExtension, m: u64, alpha: &DifferentialForm) -> Result<DifferentialForm> {
    Ok(alpha.transfer(ext.target.base())?.scale(&ext.u_pow(-(m as i64))))
}

/// ψ_m for `p | m`, `m > 0`:
/// `(β, γ) ↦ (ū^{-m}(β + γ ∧ dlog ū), e ū^{-m} γ)`.
pub fn psi_split(
    ext: &ValuedExtension,
    m: u64,
    beta: &DifferentialForm,
    gamma: &DifferentialForm,
) -> Result<(DifferentialForm, DifferentialForm)> {
    let tb = ext.target.base();
    Ok(psi_pair(ext, m as i64, &beta.transfer(tb)?, &gamma.transfer(tb)?))
}

/// The variant of [`psi_split`] without ū^{-m} on the middle term:
/// `(ū^{-m} β + γ ∧ dlog ū, e ū^{-m} γ)`.
pub fn psi_split_literal(
    ext: &ValuedExtension,
    m: u64,
    beta: &DifferentialForm,
    gamma: &DifferentialForm,
) -> Result<(DifferentialForm, DifferentialForm)> {
    let tb = ext.target.base();
    let s = ext.u_pow(-(m as i64));
    let beta = beta.transfer(tb)?;
    let gamma = gamma.transfer(tb)?;
    if beta.degree() == 0 {
        return Ok((beta.scale(&s), gamma));
    }
    let w = beta.scale(&s).add(&gamma.wedge(&ext.dlog_u()));
    let v = gamma.scale(&s.scale(tb.field().from_int(ext.e as i64)));
    Ok((w, v))
}

/// ψ_0: `(a, b) ↦ (a + b ∧ dlog ū, e b)`.
pub fn psi_residues(
    ext: &ValuedExtension,
    a: &DifferentialForm,
    b: &DifferentialForm,
) -> Result<(DifferentialForm, DifferentialForm)> {
    let tb = ext.target.base();
    let a = a.transfer(tb)?;
    if a.degree() == 0 {
        return Ok((a, DifferentialForm::zero(tb, 0)));
    }
    Ok(psi_pair(ext, 0, &a, &b.transfer(tb)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldConfig;
    use crate::forms::LogTermSum;
    use crate::laurent::canonical::{canonicalize, graded_image, GradedImage};

    #[test]
    fn tamely_ramified_pullback_of_a_symbol() {
        let base = FieldConfig::prime(3, &["x", "y"]).unwrap();
        let k = LaurentField::new(&base, "pi").unwrap();
        let l = LaurentField::new(&base, "rho").unwrap();
        let y = RationalFunction::var(&base, 1);
        let ext = ValuedExtension::new(&k, &l, 2, y.clone()).unwrap();

        let kx = k.ext().clone();
        let s = LogTermSum::single(
            RationalFunction::var(&kx, 0).mul(&k.pi_pow(-1)),
            vec![RationalFunction::var(&kx, 1)],
        )
        .unwrap();
        let f = LaurentClass::from_log_terms(&k, &s).unwrap();
        let g = extend_scalars(&f, &ext).unwrap();
        assert_eq!(g.max_pole(), Some(2));

        // The pullback agrees with substituting π = y ρ^2 in the form.
        let (dec, _) = canonicalize(&f);
        let GradedImage::Omega(alpha) = graded_image(&f, 1).unwrap() else {
            panic!("p ∤ 1");
        };
        assert_eq!(alpha, dec.higher[&1].clone().into_alpha().unwrap().reassemble());
        let GradedImage::Omega(img) = graded_image(&g, 2).unwrap() else {
            panic!("p ∤ 2");
        };
        assert_eq!(img, psi_unramified(&ext, 1, &alpha).unwrap());
    }
}
