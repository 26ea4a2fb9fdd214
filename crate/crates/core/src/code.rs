//! Linear codes over GF(q): duals, exhaustive minimum distance, MDS/AMDS
//! classification by column ranks, Schur products, extension and
//! puncturing, and the GRS/TGRS constructors.

use std::sync::OnceLock;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Element, Field};
use crate::matrix::{check_distinct, dot, Matrix};

/// Upper bound on `q^k` for exhaustive message enumeration.
pub const DISTANCE_BUDGET: u128 = 100_000_000;
/// Upper bound on the number of column subsets examined by the rank classifier.
pub const SUBSET_BUDGET: u128 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CodeClass {
    #[serde(rename = "MDS")]
    Mds,
    #[serde(rename = "AMDS")]
    Amds,
    #[serde(rename = "neither")]
    Neither,
}

impl CodeClass {
    pub fn from_distance(n: usize, k: usize, d: usize) -> CodeClass {
        if d + k == n + 1 {
            CodeClass::Mds
        } else if d + k == n {
            CodeClass::Amds
        } else {
            CodeClass::Neither
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            CodeClass::Mds => "MDS",
            CodeClass::Amds => "AMDS",
            CodeClass::Neither => "neither",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceReport {
    pub d: usize,
    pub class: CodeClass,
    /// Lexicographically least message attaining `d`.
    pub message: Vec<Element>,
    pub witness: Vec<Element>,
}

/// A linear `[n, k]` code held by a full-row-rank generator matrix.
///
/// The zero code is represented by a `0 x n` generator.
pub struct LinearCode {
    field: Field,
    n: usize,
    gen: Matrix,
    rank_deficient: bool,
    canonical: OnceLock<Matrix>,
    dual: OnceLock<Box<LinearCode>>,
    distance: OnceLock<std::result::Result<DistanceReport, Error>>,
}

impl Clone for LinearCode {
    fn clone(&self) -> Self {
        LinearCode {
            field: self.field.clone(),
            n: self.n,
            gen: self.gen.clone(),
            rank_deficient: self.rank_deficient,
            canonical: self.canonical.clone(),
            dual: OnceLock::new(),
            distance: self.distance.clone(),
        }
    }
}

impl std::fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}, {}] code over {:?}", self.n, self.k(), self.field)
    }
}

impl LinearCode {
    /// Code spanned by the rows of `m`. Dependent rows are dropped (the
    /// first maximal independent subset is kept) and the drop is flagged.
    pub fn from_generator(m: &Matrix) -> Result<LinearCode> {
        if m.rows() == 0 || m.is_zero() {
            return Err(Error::ZeroMatrix);
        }
        let keep = m.independent_rows();
        let rank_deficient = keep.len() < m.rows();
        let gen = if rank_deficient {
            m.select_rows(&keep)?
        } else {
            m.clone()
        };
        Ok(Self::from_parts(gen, rank_deficient))
    }

    pub fn zero(field: &Field, n: usize) -> LinearCode {
        Self::from_parts(Matrix::zeros(field, 0, n), false)
    }

    pub fn full(field: &Field, n: usize) -> LinearCode {
        Self::from_parts(Matrix::identity(field, n), false)
    }

    fn from_parts(gen: Matrix, rank_deficient: bool) -> LinearCode {
        LinearCode {
            field: gen.field().clone(),
            n: gen.cols(),
            gen,
            rank_deficient,
            canonical: OnceLock::new(),
            dual: OnceLock::new(),
            distance: OnceLock::new(),
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dim(&self) -> usize {
        self.gen.rows()
    }

    pub fn k(&self) -> usize {
        self.gen.rows()
    }

    pub fn generator(&self) -> &Matrix {
        &self.gen
    }

    /// True when the matrix this code was built from had dependent rows.
    pub fn rank_deficient(&self) -> bool {
        self.rank_deficient
    }

    pub fn is_zero_code(&self) -> bool {
        self.gen.rows() == 0
    }

    /// Reduced row echelon form of the generator.
    pub fn canonical(&self) -> &Matrix {
        self.canonical.get_or_init(|| self.gen.row_space_basis())
    }

    pub fn same_code(&self, other: &LinearCode) -> bool {
        self.field == other.field && self.n == other.n && self.canonical() == other.canonical()
    }

    pub fn contains(&self, x: &[Element]) -> Result<bool> {
        if x.len() != self.n {
            return Err(Error::Dimension(format!(
                "vector of length {} for a length-{} code",
                x.len(),
                self.n
            )));
        }
        Ok(self.dual().gen.mul_vec(x)?.iter().all(|e| e.is_zero()))
    }

    pub fn encode(&self, message: &[Element]) -> Result<Vec<Element>> {
        self.gen.vec_mul(message)
    }

    /// The `[n, n-k]` dual code; the dual of the full space is the zero code.
    pub fn dual(&self) -> &LinearCode {
        self.dual.get_or_init(|| {
            if self.is_zero_code() {
                Box::new(LinearCode::full(&self.field, self.n))
            } else {
                Box::new(Self::from_parts(self.gen.kernel_basis(), false))
            }
        })
    }

    /// Parity-check matrix, `(n-k) x n`.
    pub fn parity_check(&self) -> &Matrix {
        &self.dual().gen
    }

    /// Exact minimum distance by enumerating every message up to scaling.
    pub fn min_distance(&self) -> Result<DistanceReport> {
        self.distance
            .get_or_init(|| self.compute_min_distance())
            .clone()
    }

    fn compute_min_distance(&self) -> Result<DistanceReport> {
        let k = self.k();
        if k == 0 {
            return Err(Error::EmptyCode);
        }
        let f = &self.field;
        let q = f.order() as usize;
        let needed = (q as u128).saturating_pow(k as u32);
        if needed > DISTANCE_BUDGET {
            return Err(Error::Budget {
                what: "message enumeration q^k",
                needed,
                limit: DISTANCE_BUDGET,
            });
        }
        let n = self.n;
        // multiples[i][s] = s * row_i
        let multiples: Vec<Vec<Vec<Element>>> = (0..k)
            .map(|i| {
                f.elements()
                    .map(|s| self.gen.row(i).iter().map(|&g| f.mul(s, g)).collect())
                    .collect()
            })
            .collect();

        let mut best: Option<(usize, Vec<Element>, Vec<Element>)> = None;
        // Normalized messages (leading coordinate 1) in lexicographic order:
        // a later leading position is lexicographically smaller.
        for lead in (0..k).rev() {
            let mut msg = vec![Element::ZERO; k];
            msg[lead] = Element::ONE;
            let mut cw = self.gen.row(lead).to_vec();
            loop {
                let w = cw.iter().filter(|e| !e.is_zero()).count();
                if best.as_ref().is_none_or(|(bw, _, _)| w < *bw) {
                    best = Some((w, msg.clone(), cw.clone()));
                }
                // odometer over positions lead+1..k, last position fastest
                let mut pos = k;
                loop {
                    if pos == lead + 1 {
                        break;
                    }
                    pos -= 1;
                    let old = msg[pos];
                    if (old.value() as usize) + 1 < q {
                        let new = f.elem(old.value() + 1);
                        msg[pos] = new;
                        add_row(
                            f,
                            &mut cw,
                            &multiples[pos][f.sub(new, old).value() as usize],
                        );
                        pos = usize::MAX;
                        break;
                    }
                    msg[pos] = Element::ZERO;
                    add_row(f, &mut cw, &multiples[pos][f.neg(old).value() as usize]);
                }
                if pos != usize::MAX {
                    break;
                }
            }
        }
        let (d, message, witness) = best.expect("k >= 1 gives a nonzero codeword");
        debug_assert_eq!(witness.len(), n);
        Ok(DistanceReport {
            d,
            class: CodeClass::from_distance(n, k, d),
            message,
            witness,
        })
    }

    /// MDS/AMDS classification from ranks of column subsets.
    pub fn classify_by_columns(&self) -> Result<CodeClass> {
        if self.is_zero_code() {
            return Err(Error::EmptyCode);
        }
        classify_columns(&self.gen)
    }

    /// Schur (componentwise) product code.
    pub fn schur_product(&self, other: &LinearCode) -> Result<LinearCode> {
        if self.n != other.n || self.field != other.field {
            return Err(Error::Dimension(format!(
                "Schur product of lengths {} and {}",
                self.n, other.n
            )));
        }
        if self.is_zero_code() || other.is_zero_code() {
            return Ok(LinearCode::zero(&self.field, self.n));
        }
        let f = &self.field;
        let mut rows = Vec::new();
        for i in 0..self.k() {
            for j in 0..other.k() {
                rows.push(schur(f, self.gen.row(i), other.gen.row(j)));
            }
        }
        let m = Matrix::from_rows(f, &rows)?;
        let basis = m.row_space_basis();
        Ok(Self::from_parts(basis, false))
    }

    pub fn schur_square(&self) -> Result<LinearCode> {
        self.schur_product(self)
    }

    /// Extended code `(c, sum e_i c_i)` with generator `(G, G e^T)`.
    pub fn extend(&self, e: &[Element]) -> Result<LinearCode> {
        if e.len() != self.n {
            return Err(Error::Dimension(format!(
                "extension vector of length {} for length {}",
                e.len(),
                self.n
            )));
        }
        if e.iter().all(|x| x.is_zero()) {
            return Err(Error::ZeroExtension);
        }
        let col = self.gen.mul_vec(e)?;
        Ok(Self::from_parts(self.gen.append_column(&col)?, false))
    }

    /// Parity-check matrix of the extended code, `[[H, 0], [e, -1]]`.
    pub fn extended_parity_check(&self, e: &[Element]) -> Result<Matrix> {
        let f = &self.field;
        let h = self.parity_check();
        let mut rows: Vec<Vec<Element>> = h
            .row_vecs()
            .into_iter()
            .map(|mut r| {
                r.push(Element::ZERO);
                r
            })
            .collect();
        let mut last = e.to_vec();
        last.push(f.neg(Element::ONE));
        rows.push(last);
        Matrix::from_rows(f, &rows)
    }

    /// Deletes coordinate `position`; a rank drop is flagged, not fatal.
    pub fn puncture(&self, position: usize) -> Result<LinearCode> {
        let m = self.gen.remove_column(position)?;
        if self.is_zero_code() {
            return Ok(LinearCode::zero(&self.field, self.n - 1));
        }
        if m.is_zero() {
            let mut z = LinearCode::zero(&self.field, self.n - 1);
            z.rank_deficient = true;
            return Ok(z);
        }
        LinearCode::from_generator(&m)
    }

    pub fn to_json(&self) -> CodeJson {
        let (d, class) = match self.distance.get() {
            Some(Ok(r)) => (Some(r.d), Some(r.class)),
            _ => (None, None),
        };
        CodeJson {
            field: self.field.description(),
            n: self.n,
            k: self.k(),
            generator: self.gen.entries_formatted(),
            d,
            class,
        }
    }

    pub fn from_json(json: &CodeJson) -> Result<LinearCode> {
        let field = Field::from_description(&json.field)?;
        let rows = json
            .generator
            .iter()
            .map(|r| r.iter().map(|t| field.parse(t)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let code = if rows.is_empty() {
            LinearCode::zero(&field, json.n)
        } else {
            LinearCode::from_generator(&Matrix::with_cols(&field, json.n, rows)?)?
        };
        if code.k() != json.k {
            return Err(Error::Dimension(format!(
                "declared dimension {} but generator has rank {}",
                json.k,
                code.k()
            )));
        }
        Ok(code)
    }
}

/// JSON form of a code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeJson {
    pub field: String,
    pub n: usize,
    pub k: usize,
    pub generator: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub d: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub class: Option<CodeClass>,
}

fn add_row(f: &Field, acc: &mut [Element], row: &[Element]) {
    for (a, &r) in acc.iter_mut().zip(row) {
        *a = f.add(*a, r);
    }
}

pub fn schur(f: &Field, a: &[Element], b: &[Element]) -> Vec<Element> {
    a.iter().zip(b).map(|(&x, &y)| f.mul(x, y)).collect()
}

pub fn weight(x: &[Element]) -> usize {
    x.iter().filter(|e| !e.is_zero()).count()
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// True when every `m.rows()`-subset of columns of `m` is independent.
pub fn all_column_subsets_full_rank(m: &Matrix) -> Result<bool> {
    Ok(first_deficient_subset(m, m.rows())?.is_none())
}

/// First (lexicographic) column subset of the given size whose rank is
/// below `m.rows().min(size)`.
pub fn first_deficient_subset(m: &Matrix, size: usize) -> Result<Option<Vec<usize>>> {
    let n = m.cols();
    let needed = binomial(n, size);
    if needed > SUBSET_BUDGET {
        return Err(Error::Budget {
            what: "column subsets",
            needed,
            limit: SUBSET_BUDGET,
        });
    }
    let target = m.rows().min(size);
    for cols in (0..n).combinations(size) {
        if m.rank(Some(&cols))? < target {
            return Ok(Some(cols));
        }
    }
    Ok(None)
}

/// Classifies the row space of a full-row-rank `k x n` matrix via the
/// column criteria: MDS iff every k columns are independent; AMDS iff some
/// k columns are dependent and every k+1 columns have rank k.
pub fn classify_columns(gen: &Matrix) -> Result<CodeClass> {
    let k = gen.rows();
    let n = gen.cols();
    if first_deficient_subset(gen, k)?.is_none() {
        return Ok(CodeClass::Mds);
    }
    if k < n && first_deficient_subset(gen, k + 1)?.is_none() {
        return Ok(CodeClass::Amds);
    }
    Ok(CodeClass::Neither)
}

/// Generalized Reed-Solomon code with rows `v_j alpha_j^i`, `i < k`.
pub fn grs_code(field: &Field, alpha: &[Element], v: &[Element], k: usize) -> Result<LinearCode> {
    let n = alpha.len();
    let mut problems = Vec::new();
    if k == 0 || k > n {
        problems.push(format!("need 1 <= k <= n, got k = {k}, n = {n}"));
    }
    if n > field.order() as usize {
        problems.push(format!("n = {n} exceeds q = {}", field.order()));
    }
    if v.len() != n {
        problems.push(format!("{} multipliers for {n} points", v.len()));
    }
    if v.iter().any(|x| x.is_zero()) {
        problems.push("column multipliers must be nonzero".into());
    }
    if !problems.is_empty() {
        return Err(Error::InvalidParams(problems));
    }
    let vand = Matrix::vandermonde(field, alpha, k)?;
    let mut gen = vand;
    for j in 0..n {
        for i in 0..k {
            let x = field.mul(gen.get(i, j), v[j]);
            gen.set(i, j, x);
        }
    }
    LinearCode::from_generator(&gen)
}

/// Generator of the TGRS code: GRS rows with `eta alpha^(k-1+t)` added to row `h`.
pub fn tgrs_generator(
    field: &Field,
    alpha: &[Element],
    v: &[Element],
    k: usize,
    t: usize,
    h: usize,
    eta: Element,
) -> Result<Matrix> {
    let n = alpha.len();
    let mut problems = Vec::new();
    if !(h < k && t >= 1 && k - 1 + t < n) {
        problems.push(format!(
            "need 0 <= h <= k-1 < k-1+t < n, got h = {h}, k = {k}, t = {t}, n = {n}"
        ));
    }
    if n > field.order() as usize {
        problems.push(format!("n = {n} exceeds q = {}", field.order()));
    }
    if eta.is_zero() {
        problems.push("eta must be nonzero".into());
    }
    if v.len() != n || v.iter().any(|x| x.is_zero()) {
        problems.push("need n nonzero column multipliers".into());
    }
    if !problems.is_empty() {
        return Err(Error::InvalidParams(problems));
    }
    check_distinct(alpha)?;
    let mut gen = Matrix::zeros(field, k, n);
    for j in 0..n {
        for i in 0..k {
            let mut f = field.pow_u(alpha[j], i as u64);
            if i == h {
                f = field.add(f, field.mul(eta, field.pow_u(alpha[j], (k - 1 + t) as u64)));
            }
            gen.set(i, j, field.mul(v[j], f));
        }
    }
    Ok(gen)
}

/// `u_i = prod_{j != i} (alpha_i - alpha_j)^-1`.
pub fn grs_dual_multipliers(field: &Field, alpha: &[Element]) -> Result<Vec<Element>> {
    if alpha.len() < 2 {
        return Err(Error::Dimension("need at least two nodes".into()));
    }
    check_distinct(alpha)?;
    alpha
        .iter()
        .enumerate()
        .map(|(i, &ai)| {
            let prod = field.product(
                alpha
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, &aj)| field.sub(ai, aj)),
            );
            field.inv(prod)
        })
        .collect()
}

/// `sum_i u_i alpha_i^l` (used by tests and certificates).
pub fn weighted_power_sum(field: &Field, u: &[Element], alpha: &[Element], l: u64) -> Element {
    let powers: Vec<Element> = alpha.iter().map(|&a| field.pow_u(a, l)).collect();
    dot(field, u, &powers)
}
