//! Extended TGRS codes `[n+2, k]` and their criterion-level checkers.
//!
//! The generator is the TGRS matrix with twist `x^(k+1)` on row `h`,
//! followed by two columns: a unit column at row `h`, and a column with
//! `1` at row `h` and `delta` at row `k-1`. Puncturing the last column gives
//! `C1`, and the full code is the extension of `C1` by [`extension_vector`].
//!
//! All subset indices are 0-based positions into `alpha`.

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::code::{self, grs_dual_multipliers, tgrs_generator, CodeClass, LinearCode};
use crate::error::{Error, Result};
use crate::field::{Element, Field};
use crate::matrix::{check_distinct, Matrix};

/// Parameters of the extended TGRS code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtgrsParams {
    pub field: Field,
    pub n: usize,
    pub k: usize,
    pub h: usize,
    pub alpha: Vec<Element>,
    pub v: Vec<Element>,
    pub eta: Element,
    pub delta: Element,
}

/// Parameters without the `(eta, delta)` pair, as used by scans.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtgrsTemplate {
    pub field: Field,
    pub n: usize,
    pub k: usize,
    pub h: usize,
    pub alpha: Vec<Element>,
    pub v: Vec<Element>,
}

fn template_problems(
    field: &Field,
    n: usize,
    k: usize,
    h: usize,
    alpha: &[Element],
    v: &[Element],
) -> Vec<String> {
    let mut problems = Vec::new();
    if k < 3 {
        problems.push(format!("k = {k} must be at least 3"));
    }
    if h + 2 > k {
        problems.push(format!(
            "h = {h} must satisfy h <= k - 2 = {}",
            k as i64 - 2
        ));
    }
    if k + 1 >= n {
        problems.push(format!("need k + 1 < n, got k = {k}, n = {n}"));
    }
    if n > field.order() as usize {
        problems.push(format!("n = {n} exceeds q = {}", field.order()));
    }
    if alpha.len() != n {
        problems.push(format!(
            "alpha has {} entries, expected n = {n}",
            alpha.len()
        ));
    }
    if let Some(a) = alpha.iter().find(|&&a| !field.contains(a)) {
        problems.push(format!("alpha entry {} is not in the field", a.value()));
    } else if let Err(Error::RepeatedPoint(i, j)) = check_distinct(alpha) {
        problems.push(format!("alpha repeats at positions {i} and {j}"));
    }
    if v.len() != n {
        problems.push(format!("v has {} entries, expected n = {n}", v.len()));
    }
    if v.iter().any(|x| x.is_zero() || !field.contains(*x)) {
        problems.push("v entries must be nonzero field elements".into());
    }
    problems
}

impl EtgrsTemplate {
    pub fn new(
        field: &Field,
        k: usize,
        h: usize,
        alpha: Vec<Element>,
        v: Option<Vec<Element>>,
    ) -> Result<Self> {
        let n = alpha.len();
        let v = v.unwrap_or_else(|| vec![Element::ONE; n]);
        let problems = template_problems(field, n, k, h, &alpha, &v);
        if !problems.is_empty() {
            return Err(Error::InvalidParams(problems));
        }
        Ok(EtgrsTemplate {
            field: field.clone(),
            n,
            k,
            h,
            alpha,
            v,
        })
    }

    pub fn with_pair(&self, eta: Element, delta: Element) -> Result<EtgrsParams> {
        build_params(
            &self.field,
            self.n,
            self.k,
            self.h,
            self.alpha.clone(),
            self.v.clone(),
            eta,
            delta,
        )
    }
}

/// Validates the parameter bundle, reporting every violated constraint.
#[allow(clippy::too_many_arguments)]
pub fn build_params(
    field: &Field,
    n: usize,
    k: usize,
    h: usize,
    alpha: Vec<Element>,
    v: Vec<Element>,
    eta: Element,
    delta: Element,
) -> Result<EtgrsParams> {
    let mut problems = template_problems(field, n, k, h, &alpha, &v);
    if eta.is_zero() || !field.contains(eta) {
        problems.push("eta must be a nonzero field element".into());
    }
    if delta.is_zero() || !field.contains(delta) {
        problems.push("delta must be a nonzero field element".into());
    }
    if !problems.is_empty() {
        return Err(Error::InvalidParams(problems));
    }
    Ok(EtgrsParams {
        field: field.clone(),
        n,
        k,
        h,
        alpha,
        v,
        eta,
        delta,
    })
}

impl EtgrsParams {
    pub fn template(&self) -> EtgrsTemplate {
        EtgrsTemplate {
            field: self.field.clone(),
            n: self.n,
            k: self.k,
            h: self.h,
            alpha: self.alpha.clone(),
            v: self.v.clone(),
        }
    }

    pub fn code(&self) -> LinearCode {
        LinearCode::from_generator(&generator_g(self)).expect("G has full rank")
    }

    pub fn code_c1(&self) -> LinearCode {
        LinearCode::from_generator(&generator_g1(self)).expect("G1 has full rank")
    }
}

/// The `k x (n+2)` generator of the extended TGRS code.
pub fn generator_g(p: &EtgrsParams) -> Matrix {
    let f = &p.field;
    let g1 = generator_g1(p);
    let mut last = vec![Element::ZERO; p.k];
    last[p.h] = Element::ONE;
    last[p.k - 1] = f.add(last[p.k - 1], p.delta);
    g1.append_column(&last).expect("column has k entries")
}

/// The `k x (n+1)` generator of the punctured code `C1`.
pub fn generator_g1(p: &EtgrsParams) -> Matrix {
    let tgrs = tgrs_generator(&p.field, &p.alpha, &p.v, p.k, 2, p.h, p.eta)
        .expect("validated parameters satisfy the TGRS constraints");
    let mut unit = vec![Element::ZERO; p.k];
    unit[p.h] = Element::ONE;
    tgrs.append_column(&unit).expect("column has k entries")
}

/// Vector `e` of length `n+1` with `code(G) = extend(code(G1), e)`.
pub fn extension_vector(p: &EtgrsParams) -> Vec<Element> {
    let f = &p.field;
    let u = grs_dual_multipliers(f, &p.alpha).expect("alpha is distinct with n >= 2");
    let mut e: Vec<Element> = (0..p.n)
        .map(|i| {
            let num = f.mul(p.delta, f.pow_u(p.alpha[i], (p.n - p.k) as u64));
            let v_inv = f.inv(p.v[i]).expect("v is nonzero");
            f.mul(f.mul(num, u[i]), v_inv)
        })
        .collect();
    let s1 = f.sum(p.alpha.iter().copied());
    let inner = f.sub(s_poly(f, 2, &p.alpha), f.mul(s1, s1));
    e.push(f.add(Element::ONE, f.mul(f.mul(p.delta, p.eta), inner)));
    e
}

/// Signed elementary symmetric values `S_0..S_m` of a node subset, with
/// `S_r = (-1)^r e_r`, built by the recurrence
/// `S_r(E + b) = S_r(E) - b S_{r-1}(E)`.
#[derive(Clone, Debug)]
pub struct SymValues {
    values: Vec<Element>,
}

impl SymValues {
    pub fn new(f: &Field, vals: &[Element]) -> SymValues {
        let mut s = Vec::with_capacity(vals.len() + 1);
        s.push(Element::ONE);
        for &b in vals {
            s.push(Element::ZERO);
            for r in (1..s.len()).rev() {
                s[r] = f.sub(s[r], f.mul(b, s[r - 1]));
            }
        }
        SymValues { values: s }
    }

    /// `S_r`; zero for `r < 0` and `r > m`.
    pub fn get(&self, r: i64) -> Element {
        if r < 0 {
            Element::ZERO
        } else {
            self.values
                .get(r as usize)
                .copied()
                .unwrap_or(Element::ZERO)
        }
    }
}

/// `S_r(E)` for the values of the subset `E`.
pub fn s_poly(f: &Field, r: i64, vals: &[Element]) -> Element {
    SymValues::new(f, vals).get(r)
}

/// `S_{k-h-1}(J)(S_1(J)^2 - S_2(J)) - S_1(J) S_{k-h}(J) + S_{k-h+1}(J)` for
/// `|J| = k - 1`.
pub fn delta_j(f: &Field, j_vals: &[Element], k: usize, h: usize) -> Result<Element> {
    if j_vals.len() + 1 != k {
        return Err(Error::Dimension(format!(
            "Delta needs k - 1 = {} values, got {}",
            k as i64 - 1,
            j_vals.len()
        )));
    }
    let s = SymValues::new(f, j_vals);
    Ok(delta_from(f, &s, k, h))
}

fn delta_from(f: &Field, s: &SymValues, k: usize, h: usize) -> Element {
    let kh = k as i64 - h as i64;
    let s1 = s.get(1);
    let t = f.mul(s.get(kh - 1), f.sub(f.mul(s1, s1), s.get(2)));
    f.add(f.sub(t, f.mul(s1, s.get(kh))), s.get(kh + 1))
}

/// Verdict of one condition of a criterion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionResult {
    pub id: String,
    pub holds: bool,
    /// For a universal condition: the first failing subset. For an
    /// existential condition that holds: the first satisfying subset.
    pub witness: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub verdict: bool,
    pub conditions: Vec<ConditionResult>,
}

impl ConditionReport {
    fn from_conditions(conditions: Vec<ConditionResult>) -> ConditionReport {
        ConditionReport {
            verdict: conditions.iter().all(|c| c.holds),
            conditions,
        }
    }

    pub fn first_failing(&self) -> Option<&ConditionResult> {
        self.conditions.iter().find(|c| !c.holds)
    }
}

/// Evaluation context shared by the checkers.
struct Ctx<'a> {
    p: &'a EtgrsParams,
    f: &'a Field,
    kh: i64,
    eta_inv: Element,
}

impl<'a> Ctx<'a> {
    fn new(p: &'a EtgrsParams) -> Ctx<'a> {
        Ctx {
            p,
            f: &p.field,
            kh: p.k as i64 - p.h as i64,
            eta_inv: p.field.inv(p.eta).expect("eta is nonzero"),
        }
    }

    fn sym(&self, subset: &[usize]) -> SymValues {
        let vals: Vec<Element> = subset.iter().map(|&i| self.p.alpha[i]).collect();
        SymValues::new(self.f, &vals)
    }

    /// `S_{k-h+1}(I) - S_1(I) S_{k-h}(I)`.
    fn twist_value(&self, s: &SymValues) -> Element {
        let f = self.f;
        f.sub(s.get(self.kh + 1), f.mul(s.get(1), s.get(self.kh)))
    }

    /// Condition (1) of the MDS criterion for one k-subset.
    fn b1_ok(&self, subset: &[usize]) -> bool {
        self.twist_value(&self.sym(subset)) != self.eta_inv
    }

    fn b2_ok(&self, subset: &[usize]) -> bool {
        !self.sym(subset).get(self.kh - 1).is_zero()
    }

    /// `S_{k-h-1}(J) + delta - delta eta Delta`.
    fn theta3(&self, s: &SymValues) -> Element {
        let (f, p) = (self.f, self.p);
        let delta = delta_from(f, s, p.k, p.h);
        f.sub(
            f.add(s.get(self.kh - 1), p.delta),
            f.mul(f.mul(p.delta, p.eta), delta),
        )
    }

    fn b3_ok(&self, subset: &[usize]) -> bool {
        !self.theta3(&self.sym(subset)).is_zero()
    }

    fn b4_ok(&self, subset: &[usize]) -> bool {
        !self.sym(subset).get(self.kh - 2).is_zero()
    }

    fn theta1(&self, s: &SymValues) -> Element {
        let f = self.f;
        f.sub(Element::ONE, f.mul(self.p.eta, self.twist_value(s)))
    }

    fn theta2(&self, s: &SymValues) -> Element {
        let f = self.f;
        let inner = f.sub(
            f.mul(s.get(2), s.get(self.kh)),
            f.mul(s.get(1), s.get(self.kh + 1)),
        );
        f.add(s.get(1), f.mul(self.p.eta, inner))
    }

    fn theta4(&self, s: &SymValues) -> Element {
        let f = self.f;
        f.sub(f.mul(s.get(1), s.get(self.kh - 1)), s.get(self.kh))
    }
}

fn check_budget(n: usize, sizes: &[usize]) -> Result<()> {
    let needed: u128 = sizes
        .iter()
        .map(|&s| binomial(n, s) * (s as u128 + 1))
        .sum();
    if needed > code::SUBSET_BUDGET {
        return Err(Error::Budget {
            what: "node subsets",
            needed,
            limit: code::SUBSET_BUDGET,
        });
    }
    Ok(())
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn forall(id: &str, n: usize, size: usize, pred: impl Fn(&[usize]) -> bool) -> ConditionResult {
    let failing = (0..n).combinations(size).find(|s| !pred(s));
    ConditionResult {
        id: id.to_string(),
        holds: failing.is_none(),
        witness: failing,
        note: None,
    }
}

fn exists(n: usize, size: usize, pred: impl Fn(&[usize]) -> bool) -> Option<Vec<usize>> {
    (0..n).combinations(size).find(|s| pred(s))
}

/// Subsets of `set` obtained by dropping one element, in lexicographic order.
fn drop_one(set: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    (0..set.len()).rev().map(move |skip| {
        set.iter()
            .enumerate()
            .filter(|&(i, _)| i != skip)
            .map(|(_, &x)| x)
            .collect()
    })
}

/// The four-condition MDS criterion.
pub fn mds_check(p: &EtgrsParams) -> Result<ConditionReport> {
    let (n, k) = (p.n, p.k);
    check_budget(n, &[k, k - 1, k - 1, k - 2])?;
    let c = Ctx::new(p);
    Ok(ConditionReport::from_conditions(vec![
        forall("1", n, k, |s| c.b1_ok(s)),
        forall("2", n, k - 1, |s| c.b2_ok(s)),
        forall("3", n, k - 1, |s| c.b3_ok(s)),
        forall("4", n, k - 2, |s| c.b4_ok(s)),
    ]))
}

type ExistsCase<'a> = (&'static str, usize, &'a dyn Fn(&[usize]) -> bool);

/// The three-condition AMDS criterion.
pub fn amds_check(p: &EtgrsParams) -> Result<ConditionReport> {
    let (n, k) = (p.n, p.k);
    if !(3 <= k && k + 1 < n) {
        return Err(Error::Precondition(format!(
            "AMDS criterion needs 3 <= k < n - 1, got k = {k}, n = {n}"
        )));
    }
    check_budget(n, &[k + 1, k, k, k - 1, k - 1, k - 2])?;
    let c = Ctx::new(p);

    let cond1 = forall("1", n, k + 1, |m| drop_one(m).any(|i| c.b1_ok(&i)));
    let cond2 = forall("2", n, k, |i| drop_one(i).any(|j| c.b3_ok(&j)));

    let cases: [ExistsCase; 4] = [
        ("3a", k, &|s| !c.b1_ok(s)),
        ("3b", k - 1, &|s| !c.b2_ok(s)),
        ("3c", k - 1, &|s| !c.b3_ok(s)),
        ("3d", k - 2, &|s| !c.b4_ok(s)),
    ];
    let mut cond3 = ConditionResult {
        id: "3".into(),
        holds: false,
        witness: None,
        note: Some("no deficient k-column set exists".into()),
    };
    for (case, size, pred) in cases {
        if let Some(w) = exists(n, size, pred) {
            cond3 = ConditionResult {
                id: "3".into(),
                holds: true,
                witness: Some(w),
                note: Some(case.into()),
            };
            break;
        }
    }
    Ok(ConditionReport::from_conditions(vec![cond1, cond2, cond3]))
}

/// Deep-hole vector `(v_i alpha_i^k, a, b)` of length `n + 2`.
pub fn deep_hole_vector(p: &EtgrsParams, a: Element, b: Element) -> Vec<Element> {
    let f = &p.field;
    let mut x: Vec<Element> = p
        .alpha
        .iter()
        .zip(&p.v)
        .map(|(&al, &vi)| f.mul(vi, f.pow_u(al, p.k as u64)))
        .collect();
    x.push(a);
    x.push(b);
    x
}

/// Outcome of the covering-radius criterion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeepHoleReport {
    pub report: ConditionReport,
    pub code_class: CodeClass,
    /// The candidate `(alpha^k, a, b)`.
    pub x: Vec<Element>,
    /// Whether `G` stacked on `x` generates an MDS code.
    pub augmented_mds: bool,
    /// `n - k + 2` when the verdict holds.
    pub predicted_radius: Option<usize>,
}

/// The four-condition covering-radius / deep-hole criterion. Requires the
/// code to be MDS or AMDS (decided here by column ranks).
pub fn deep_hole_check(p: &EtgrsParams, a: Element, b: Element) -> Result<DeepHoleReport> {
    let f = &p.field;
    f.check(a)?;
    f.check(b)?;
    let g = generator_g(p);
    let class = code::classify_columns(&g)?;
    if class == CodeClass::Neither {
        return Err(Error::Precondition(
            "the code is neither MDS nor AMDS".into(),
        ));
    }
    let report = deep_hole_conditions(p, a, b)?;
    let x = deep_hole_vector(p, a, b);
    let augmented = g.append_row(&x)?;
    let augmented_mds = code::all_column_subsets_full_rank(&augmented)?;
    if report.verdict && !augmented_mds {
        return Err(Error::CrossCheck(
            "covering-radius criterion holds but G stacked on x is not MDS".into(),
        ));
    }
    Ok(DeepHoleReport {
        predicted_radius: report.verdict.then_some(p.n - p.k + 2),
        report,
        code_class: class,
        x,
        augmented_mds,
    })
}

/// Conditions 1)-4) alone, without the MDS/AMDS precondition.
pub fn deep_hole_conditions(p: &EtgrsParams, a: Element, b: Element) -> Result<ConditionReport> {
    let (n, k) = (p.n, p.k);
    check_budget(n, &[k + 1, k, k, k - 1])?;
    let c = Ctx::new(p);
    let f = c.f;
    let kh = c.kh;
    Ok(ConditionReport::from_conditions(vec![
        forall("1", n, k + 1, |m| c.sym(m).get(kh + 1) != c.eta_inv),
        forall("2", n, k, |i| {
            let s = c.sym(i);
            !f.add(s.get(kh), f.mul(a, c.theta1(&s))).is_zero()
        }),
        forall("3", n, k, |i| {
            let s = c.sym(i);
            let t = f.add(f.mul(b, c.theta1(&s)), f.mul(p.delta, c.theta2(&s)));
            !f.add(s.get(kh), t).is_zero()
        }),
        forall("4", n, k - 1, |j| {
            let s = c.sym(j);
            let t = f.sub(f.mul(a, c.theta3(&s)), f.mul(b, s.get(kh - 1)));
            !f.sub(t, f.mul(p.delta, c.theta4(&s))).is_zero()
        }),
    ]))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateKind {
    SchurSquare,
    DualWeightOne,
}

/// Evidence that a code is not monomially equivalent to a GRS code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub applicable: bool,
    pub valid: bool,
    /// Schur-square dimension found (schur-square kind).
    pub dimension: Option<usize>,
    /// Dimension a GRS code would exceed: the certificate needs `dimension >= required`.
    pub required: Option<usize>,
    /// Position and value of the weight-one vector (dual kind).
    pub position: Option<usize>,
    pub value: Option<Element>,
}

impl Certificate {
    fn not_applicable(kind: CertificateKind) -> Certificate {
        Certificate {
            kind,
            applicable: false,
            valid: false,
            dimension: None,
            required: None,
            position: None,
            value: None,
        }
    }
}

/// Schur-square dimension test on an arbitrary code of dimension `k`: a
/// GRS code with `2 <= k <= (n+1)/2` has a square of dimension exactly
/// `2k - 1`, so `dim >= 2k` rules GRS out.
pub fn schur_square_dimension_certificate(code: &LinearCode) -> Result<Certificate> {
    let k = code.k();
    let dim = code.schur_square()?.k();
    Ok(Certificate {
        kind: CertificateKind::SchurSquare,
        applicable: true,
        valid: dim >= 2 * k,
        dimension: Some(dim),
        required: Some(2 * k),
        position: None,
        value: None,
    })
}

/// Schur-square certificate for `C1`, applicable when `3 <= k < (n+2)/2`.
pub fn schur_square_certificate(p: &EtgrsParams) -> Result<Certificate> {
    if !(p.k >= 3 && 2 * p.k < p.n + 2) {
        return Ok(Certificate::not_applicable(CertificateKind::SchurSquare));
    }
    schur_square_dimension_certificate(&p.code_c1())
}

/// The three dual codewords `c1, c2, c3` used by the weight-one certificate.
pub fn dual_certificate_vectors(p: &EtgrsParams) -> Result<[Vec<Element>; 3]> {
    let (f, n, k) = (&p.field, p.n, p.k);
    if k + 3 > n {
        return Err(Error::Precondition(format!(
            "need k <= n - 3, got k = {k}, n = {n}"
        )));
    }
    let u = grs_dual_multipliers(f, &p.alpha)?;
    let column = |exp: usize| -> Result<Vec<Element>> {
        (0..n)
            .map(|i| {
                let t = f.mul(u[i], f.pow_u(p.alpha[i], exp as u64));
                f.div(t, p.v[i])
            })
            .collect()
    };
    let s1 = f.sum(p.alpha.iter().copied());
    let mut c1 = column(n - k - 3)?;
    c1.extend([Element::ZERO, Element::ZERO]);
    let mut c2 = column(n - k - 2)?;
    c2.extend([f.neg(p.eta), Element::ZERO]);
    let mut c3 = column(n - k - 1)?;
    c3.extend([f.neg(f.mul(p.eta, s1)), Element::ZERO]);
    Ok([c1, c2, c3])
}

/// Weight-one vector in the Schur square of the dual, applicable when
/// `(n+3)/2 <= k <= n-3`.
pub fn dual_schur_certificate(p: &EtgrsParams) -> Result<Certificate> {
    let kind = CertificateKind::DualWeightOne;
    if !(2 * p.k >= p.n + 3 && p.k + 3 <= p.n) {
        return Ok(Certificate::not_applicable(kind));
    }
    let f = &p.field;
    let g = generator_g(p);
    let [c1, c2, c3] = dual_certificate_vectors(p)?;
    let mut members = true;
    for c in [&c1, &c2, &c3] {
        members &= g.mul_vec(c)?.iter().all(|e| e.is_zero());
    }
    let combo: Vec<Element> = (0..p.n + 2)
        .map(|i| f.sub(f.mul(c1[i], c3[i]), f.mul(c2[i], c2[i])))
        .collect();
    let support: Vec<usize> = (0..combo.len()).filter(|&i| !combo[i].is_zero()).collect();
    let (position, value) = match support.as_slice() {
        [i] => (Some(*i), Some(combo[*i])),
        _ => (None, None),
    };
    Ok(Certificate {
        kind,
        applicable: true,
        valid: members && position.is_some(),
        dimension: None,
        required: None,
        position,
        value,
    })
}

/// Which checker a scan runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScanTarget {
    Mds,
    Amds,
    DeepHole { a: Element, b: Element },
}

impl ScanTarget {
    pub fn name(&self) -> &'static str {
        match self {
            ScanTarget::Mds => "mds",
            ScanTarget::Amds => "amds",
            ScanTarget::DeepHole { .. } => "deep-hole",
        }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ScanOptions {
    /// Compare every verdict with the exhaustive classifier; any
    /// disagreement aborts the scan.
    pub cross_validate: bool,
    /// Worker count; `None` uses the global pool.
    pub threads: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanHit {
    pub eta: Element,
    pub delta: Element,
    pub report: ConditionReport,
    pub brute_force: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanResult {
    pub template: EtgrsTemplate,
    pub target: ScanTarget,
    pub scanned: usize,
    pub hits: Vec<ScanHit>,
}

/// Theorem verdict for one pair, `None` when a deep-hole precondition fails.
fn evaluate(p: &EtgrsParams, target: ScanTarget) -> Result<Option<ConditionReport>> {
    match target {
        ScanTarget::Mds => mds_check(p).map(Some),
        ScanTarget::Amds => amds_check(p).map(Some),
        ScanTarget::DeepHole { a, b } => match deep_hole_check(p, a, b) {
            Ok(r) => Ok(Some(r.report)),
            Err(Error::Precondition(_)) => Ok(None),
            Err(e) => Err(e),
        },
    }
}

/// Exhaustive verdict for one pair.
pub fn brute_force_verdict(p: &EtgrsParams, target: ScanTarget) -> Result<bool> {
    match target {
        ScanTarget::Mds => Ok(p.code().min_distance()?.class == CodeClass::Mds),
        ScanTarget::Amds => Ok(p.code().min_distance()?.class == CodeClass::Amds),
        ScanTarget::DeepHole { a, b } => {
            let code = p.code();
            if code.min_distance()?.class == CodeClass::Neither {
                return Ok(false);
            }
            let aug = code.generator().append_row(&deep_hole_vector(p, a, b))?;
            code::all_column_subsets_full_rank(&aug)
        }
    }
}

/// Runs the target checker over every `(eta, delta)` in `F_q* x F_q*`.
/// Hits are sorted by `(eta, delta)` in the field's notation order.
pub fn scan(
    template: &EtgrsTemplate,
    target: ScanTarget,
    options: ScanOptions,
) -> Result<ScanResult> {
    let f = &template.field;
    let pairs: Vec<(Element, Element)> = f
        .nonzero_elements()
        .flat_map(|eta| f.nonzero_elements().map(move |delta| (eta, delta)))
        .collect();

    let work = || -> Result<Vec<Option<ScanHit>>> {
        pairs
            .par_iter()
            .map(|&(eta, delta)| {
                let p = template.with_pair(eta, delta)?;
                let report = evaluate(&p, target)?;
                let verdict = report.as_ref().is_some_and(|r| r.verdict);
                let brute = if options.cross_validate {
                    let b = brute_force_verdict(&p, target)?;
                    if b != verdict {
                        return Err(Error::CrossCheck(format!(
                            "{} criterion says {verdict} but exhaustive check says {b} at (eta, delta) = ({}, {})",
                            target.name(),
                            f.format(eta),
                            f.format(delta)
                        )));
                    }
                    Some(b)
                } else {
                    None
                };
                Ok(report.filter(|r| r.verdict).map(|report| ScanHit {
                    eta,
                    delta,
                    report,
                    brute_force: brute,
                }))
            })
            .collect()
    };

    let results = match options.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build()
            .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?
            .install(work)?,
        None => work()?,
    };
    let mut hits: Vec<ScanHit> = results.into_iter().flatten().collect();
    hits.sort_by_key(|h| (f.notation_key(h.eta), f.notation_key(h.delta)));
    Ok(ScanResult {
        template: template.clone(),
        target,
        scanned: pairs.len(),
        hits,
    })
}
