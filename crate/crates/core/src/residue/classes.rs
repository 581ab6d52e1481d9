use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exactalg::{
    Ctx, DPoly, HClass, MultiPoly, Rational, UniSeries, VarContext, D, H,
};

/// Segre classes `s_0 = 1, s_1, ..., s_n` of an n-dimensional base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SegreData {
    classes: Vec<HClass>,
}

impl SegreData {
    /// From `s_1..s_n`; `s_0 = 1` is implicit.
    pub fn new(classes: Vec<HClass>) -> Result<Self> {
        let n = classes.len();
        let first = classes
            .first()
            .ok_or_else(|| Error::Argument("Segre data needs n >= 1 classes".into()))?;
        let ctx = first.ctx().clone();
        if classes.iter().any(|c| c.dim() as usize != n) {
            return Err(Error::Argument("Segre classes truncated at the wrong degree".into()));
        }
        let mut all = vec![HClass::one(&ctx, n as u32)?];
        for c in classes {
            all.push(HClass::new(&c.poly().rebase(&ctx)?, n as u32)?);
        }
        Ok(SegreData { classes: all })
    }

    /// Trivial data `s = 1` on an n-dimensional base.
    pub fn trivial(n: usize) -> Result<Self> {
        let ctx = hd_context();
        let zero = HClass::zero(&ctx, n as u32)?;
        Self::new(vec![zero; n])
    }

    pub fn dim(&self) -> usize {
        self.classes.len() - 1
    }

    pub fn ctx(&self) -> &Ctx {
        self.classes[0].ctx()
    }

    /// `s_i` as a polynomial in `h` and `d`; `s_0 = 1`.
    pub fn class(&self, i: usize) -> &MultiPoly {
        self.classes[i].poly()
    }

    /// Total class `1 + s_1 + ... + s_n`.
    pub fn total(&self) -> HClass {
        self.classes[1..]
            .iter()
            .fold(self.classes[0].clone(), |acc, c| acc.add(c).expect("same ring"))
    }
}

/// Context `h, d`.
pub fn hd_context() -> Ctx {
    VarContext::new([H, D]).expect("valid names")
}

/// Total Chern class of a smooth degree-d hypersurface of dimension n: `(1+h)^(n+2) / (1+dh)`.
pub fn chern_hypersurface(n: usize) -> Result<HClass> {
    let ctx = hd_context();
    let h = MultiPoly::var(&ctx, 0);
    let d = MultiPoly::var(&ctx, 1);
    let one = MultiPoly::one(&ctx);
    let ambient = HClass::new(&(&one + &h).pow(n as u32 + 2), n as u32)?;
    let normal = HClass::new(&(&one + &d * &h), n as u32)?;
    ambient.mul(&normal.inverse()?)
}

/// Segre classes of a smooth degree-d hypersurface: `s(X) = (1+dh) (1+h)^-(n+2)`.
pub fn segre_hypersurface(n: usize) -> Result<SegreData> {
    if n < 1 {
        return Err(Error::Argument("dimension n must be at least 1".into()));
    }
    let ctx = hd_context();
    let h = MultiPoly::var(&ctx, 0);
    let d = MultiPoly::var(&ctx, 1);
    let one = MultiPoly::one(&ctx);
    let ambient = HClass::new(&(&one + &h).pow(n as u32 + 2), n as u32)?;
    let normal = HClass::new(&(&one + &d * &h), n as u32)?;
    let total = normal.mul(&ambient.inverse()?)?;
    SegreData::new((1..=n as u32).map(|i| total.h_component(i)).collect())
}

/// Todd class from the total Chern class, through Newton power sums.
///
/// `log Td = sum_m L_m p_m` where `L_m` are the coefficients of
/// `log(x / (1 - e^-x))` and `p_m` the power sums of the Chern roots.
pub fn todd_class(chern: &HClass) -> Result<HClass> {
    let n = chern.dim() as usize;
    let ctx = chern.ctx().clone();
    let c: Vec<HClass> = (0..=n as u32).map(|i| chern.h_component(i)).collect();
    if !c[0].poly().is_one() {
        return Err(Error::NonUnit(c[0].to_string()));
    }
    let mut p: Vec<HClass> = vec![HClass::zero(&ctx, n as u32)?];
    for m in 1..=n {
        let mut pm = c[m].scale(&Rational::from_integer(BigInt::from(m)));
        if m % 2 == 0 {
            pm = pm.scale(&-Rational::from_integer(1.into()));
        }
        for i in 1..m {
            let term = c[i].mul(&p[m - i])?;
            pm = if i % 2 == 1 { pm.add(&term)? } else { pm.sub(&term)? };
        }
        p.push(pm);
    }
    let log_series = UniSeries::one_minus_exp_neg_over_x(n + 1).inverse()?.log()?;
    let mut log_td = HClass::zero(&ctx, n as u32)?;
    for (m, pm) in p.iter().enumerate().skip(1) {
        log_td = log_td.add(&pm.scale(log_series.coeff(m)))?;
    }
    // exp of a nilpotent class
    let mut td = HClass::one(&ctx, n as u32)?;
    let mut power = HClass::one(&ctx, n as u32)?;
    let mut fact = Rational::from_integer(1.into());
    for j in 1..=n {
        power = power.mul(&log_td)?;
        fact *= Rational::from_integer(BigInt::from(j));
        td = td.add(&power.scale(&fact.recip()))?;
    }
    Ok(td)
}

/// `int_X c` as a polynomial over the coefficient variables, using `int_X h^n = d`.
pub fn integrate_over_x_symbolic(c: &HClass) -> Result<MultiPoly> {
    let top = c.h_coefficient(c.dim());
    let ctx = top.ctx().extended(&[D]);
    let top = top.rebase(&ctx)?;
    Ok(top * MultiPoly::var_named(&ctx, D)?)
}

/// `int_X c`: the coefficient of `h^n`, times `d`.
pub fn integrate_over_x(c: &HClass) -> Result<DPoly> {
    DPoly::from_multipoly(&integrate_over_x_symbolic(c)?, D)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, rat};

    #[test]
    fn curve_segre_class() {
        let s = segre_hypersurface(1).unwrap();
        assert_eq!(s.class(1).to_string(), "h*d - 3*h");
        let c = chern_hypersurface(1).unwrap();
        assert_eq!(c.poly().to_string(), "-h*d + 3*h + 1");
    }

    #[test]
    fn chern_times_segre_is_one() {
        for n in 1..=6 {
            let s = segre_hypersurface(n).unwrap().total();
            let c = chern_hypersurface(n).unwrap();
            assert!(c.mul(&s).unwrap().poly().is_one(), "n = {n}");
        }
    }

    #[test]
    fn integration() {
        let ctx = hd_context();
        let h = MultiPoly::var(&ctx, 0);
        let d = MultiPoly::var(&ctx, 1);
        for n in 1..4u32 {
            let top = HClass::new(&h.pow(n), n).unwrap();
            assert_eq!(integrate_over_x(&top).unwrap().coeffs(), &[int(0), int(1)]);
            assert!(integrate_over_x(&HClass::one(&ctx, n).unwrap()).unwrap().is_zero());
            let c = (MultiPoly::from_int(&ctx, 3) + d.scale(&int(5))) * h.pow(n) + h.pow(n - 1);
            let v = integrate_over_x(&HClass::new(&c, n).unwrap()).unwrap();
            assert_eq!(v.coeffs(), &[int(0), int(3), int(5)]);
        }
    }

    #[test]
    fn todd_low_degree_terms() {
        // generic Chern classes through degree 3 in a graded toy ring: c_i = x_i h^i
        let ctx = VarContext::new([H, D]).unwrap();
        let h = MultiPoly::var(&ctx, 0);
        let d = MultiPoly::var(&ctx, 1);
        // c1 = d h, c2 = d^2 h^2 exercises both terms of the quadratic part
        let chern = HClass::new(&(MultiPoly::one(&ctx) + &d * &h + (&d * &h).pow(2)), 2).unwrap();
        let td = todd_class(&chern).unwrap();
        let c1 = &d * &h;
        let c2 = (&d * &h).pow(2);
        let expected = MultiPoly::one(&ctx)
            + c1.scale(&rat(1, 2))
            + (c1.pow(2) + &c2).scale(&rat(1, 12));
        assert_eq!(td.poly(), &expected);
    }

    #[test]
    fn todd_matches_hypersurface_closed_form() {
        // Td = (h / (1 - e^-h))^(n+2) * (1 - e^(-dh)) / (dh)
        for n in 1..=4usize {
            let ctx = hd_context();
            let h = MultiPoly::var(&ctx, 0);
            let d = MultiPoly::var(&ctx, 1);
            let f = UniSeries::one_minus_exp_neg_over_x(n + 1);
            let g = f.inverse().unwrap();
            let series_at = |s: &UniSeries, x: &MultiPoly| {
                (0..=n).fold(MultiPoly::zero(&ctx), |acc, i| acc + x.pow(i as u32).scale(s.coeff(i)))
            };
            let ambient = HClass::new(&series_at(&g, &h), n as u32).unwrap().pow(n as u32 + 2);
            let normal = HClass::new(&series_at(&f, &(&d * &h)), n as u32).unwrap();
            let expected = ambient.mul(&normal).unwrap();
            let td = todd_class(&chern_hypersurface(n).unwrap()).unwrap();
            assert_eq!(td, expected, "n = {n}");
        }
    }

    #[test]
    fn arithmetic_genus_of_surfaces() {
        let td = todd_class(&chern_hypersurface(2).unwrap()).unwrap();
        let chi = integrate_over_x(&td).unwrap();
        // d (d^2 - 6d + 11) / 6
        assert_eq!(chi.coeffs(), &[int(0), rat(11, 6), int(-1), rat(1, 6)]);
        assert_eq!(chi.eval(&int(4)), int(2));
        assert_eq!(chi.eval(&int(1)), int(1));
    }
}
