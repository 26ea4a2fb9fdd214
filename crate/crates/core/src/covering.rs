//! Coset-leader weights, covering radius and deep holes.
//!
//! Syndromes `H x^T` are packed into an index with base-`q` digits (digit
//! `i` is the element value of coordinate `i`). Leader weights are found by
//! breadth-first search from the zero syndrome, adding one scaled column of
//! `H` per step.

use std::collections::VecDeque;
use std::io::{Read, Write};

use crate::code::{self, CodeClass, LinearCode};
use crate::error::{Error, Result};
use crate::etgrs::{self, EtgrsParams};
use crate::field::{Element, Field};
use crate::matrix::Matrix;

/// Largest syndrome space the BFS will allocate.
pub const SYNDROME_BUDGET: u128 = 10_000_000;

const UNSEEN: u8 = u8::MAX;

/// Leader weight of every coset of a code.
#[derive(Clone, Debug)]
pub struct CosetTable {
    field: Field,
    n: usize,
    k: usize,
    parity: Matrix,
    weights: Vec<u8>,
}

fn syndrome_space(q: u32, r: usize) -> Result<usize> {
    let needed = (q as u128).checked_pow(r as u32).unwrap_or(u128::MAX);
    if needed > SYNDROME_BUDGET {
        return Err(Error::Budget {
            what: "syndromes",
            needed,
            limit: SYNDROME_BUDGET,
        });
    }
    Ok(needed as usize)
}

impl CosetTable {
    pub fn new(code: &LinearCode) -> Result<CosetTable> {
        let f = code.field().clone();
        let n = code.len();
        let parity = code.parity_check().clone();
        let r = parity.rows();
        let q = f.order();
        let size = syndrome_space(q, r)?;
        if n > UNSEEN as usize - 1 {
            return Err(Error::Dimension(format!(
                "length {n} too large for byte weights"
            )));
        }

        // every nonzero multiple of every column, packed
        let mut steps: Vec<Vec<Element>> = Vec::with_capacity(n * (q as usize - 1));
        for j in 0..n {
            let col = parity.column(j);
            if col.iter().all(|e| e.is_zero()) {
                continue;
            }
            for a in f.nonzero_elements() {
                steps.push(col.iter().map(|&c| f.mul(a, c)).collect());
            }
        }

        let mut weights = vec![UNSEEN; size];
        weights[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        let mut digits = vec![Element::ZERO; r];
        while let Some(s) = queue.pop_front() {
            let w = weights[s];
            unpack(s, q, &mut digits);
            for step in &steps {
                let mut idx = 0usize;
                for i in (0..r).rev() {
                    idx = idx * q as usize + f.add(digits[i], step[i]).value() as usize;
                }
                if weights[idx] == UNSEEN {
                    weights[idx] = w + 1;
                    queue.push_back(idx);
                }
            }
        }
        debug_assert!(weights.iter().all(|&w| w != UNSEEN));
        Ok(CosetTable {
            field: f,
            n,
            k: code.k(),
            parity,
            weights,
        })
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
        self.k
    }

    /// Leader weights indexed by packed syndrome.
    pub fn weights(&self) -> &[u8] {
        &self.weights
    }

    pub fn covering_radius(&self) -> usize {
        self.weights.iter().copied().max().unwrap_or(0) as usize
    }

    pub fn syndrome_index(&self, x: &[Element]) -> Result<usize> {
        let s = self.parity.mul_vec(x)?;
        let q = self.field.order() as usize;
        Ok(s.iter()
            .rev()
            .fold(0usize, |acc, e| acc * q + e.value() as usize))
    }

    /// Minimum weight of `x + C`.
    pub fn coset_weight(&self, x: &[Element]) -> Result<usize> {
        for &e in x {
            self.field.check(e)?;
        }
        Ok(self.weights[self.syndrome_index(x)?] as usize)
    }

    /// Number of cosets of each leader weight `0..=radius`.
    pub fn weight_distribution(&self) -> Vec<u64> {
        let mut dist = vec![0u64; self.covering_radius() + 1];
        for &w in &self.weights {
            dist[w as usize] += 1;
        }
        dist
    }

    /// Binary dump: field description and `'\n'`, `n` and `k` as little
    /// endian `u32`, then one weight byte per syndrome.
    pub fn write_dump(&self, mut out: impl Write) -> Result<()> {
        let io = |e: std::io::Error| Error::Dump(e.to_string());
        out.write_all(self.field.description().as_bytes())
            .map_err(io)?;
        out.write_all(b"\n").map_err(io)?;
        out.write_all(&(self.n as u32).to_le_bytes()).map_err(io)?;
        out.write_all(&(self.k as u32).to_le_bytes()).map_err(io)?;
        out.write_all(&self.weights).map_err(io)?;
        Ok(())
    }
}

fn unpack(mut s: usize, q: u32, digits: &mut [Element]) {
    for d in digits.iter_mut() {
        *d = Element((s % q as usize) as u32);
        s /= q as usize;
    }
}

/// Contents of a leader-weight dump.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightDump {
    pub field: Field,
    pub n: usize,
    pub k: usize,
    pub weights: Vec<u8>,
}

pub fn read_dump(mut input: impl Read) -> Result<WeightDump> {
    let io = |e: std::io::Error| Error::Dump(e.to_string());
    let mut bytes = Vec::new();
    input.read_to_end(&mut bytes).map_err(io)?;
    let nl = bytes
        .iter()
        .position(|&b| b == b'\n')
        .ok_or_else(|| Error::Dump("missing field description line".into()))?;
    let desc = std::str::from_utf8(&bytes[..nl]).map_err(|e| Error::Dump(e.to_string()))?;
    let field = Field::from_description(desc)?;
    let rest = &bytes[nl + 1..];
    if rest.len() < 8 {
        return Err(Error::Dump("truncated header".into()));
    }
    let n = u32::from_le_bytes(rest[0..4].try_into().unwrap()) as usize;
    let k = u32::from_le_bytes(rest[4..8].try_into().unwrap()) as usize;
    if k > n {
        return Err(Error::Dump(format!("k = {k} exceeds n = {n}")));
    }
    let expected = syndrome_space(field.order(), n - k)?;
    let weights = rest[8..].to_vec();
    if weights.len() != expected {
        return Err(Error::Dump(format!(
            "expected {expected} weight bytes, found {}",
            weights.len()
        )));
    }
    Ok(WeightDump {
        field,
        n,
        k,
        weights,
    })
}

pub fn coset_leader_weights(code: &LinearCode) -> Result<CosetTable> {
    CosetTable::new(code)
}

pub fn covering_radius(code: &LinearCode) -> Result<usize> {
    Ok(CosetTable::new(code)?.covering_radius())
}

pub fn coset_weight(code: &LinearCode, x: &[Element]) -> Result<usize> {
    CosetTable::new(code)?.coset_weight(x)
}

/// Deep-hole verdict for a vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeepHoleVerdict {
    pub is_deep_hole: bool,
    pub coset_weight: usize,
    pub covering_radius: usize,
    pub method: &'static str,
    /// For MDS and AMDS codes: whether `G` stacked on `x` is MDS.
    pub augmented_mds: Option<bool>,
}

/// Decides whether `x` is a deep hole by BFS, and for MDS or AMDS codes
/// cross-checks `coset weight = n - k` against the augmented-MDS test.
pub fn is_deep_hole(code: &LinearCode, x: &[Element]) -> Result<DeepHoleVerdict> {
    if x.len() != code.len() {
        return Err(Error::Dimension(format!(
            "vector has length {}, code has length {}",
            x.len(),
            code.len()
        )));
    }
    let table = CosetTable::new(code)?;
    let weight = table.coset_weight(x)?;
    let radius = table.covering_radius();
    let augmented_mds = if code.is_zero_code() {
        None
    } else {
        match code::classify_columns(code.generator())? {
            CodeClass::Neither => None,
            _ => {
                let aug = code.generator().append_row(x)?;
                let mds = code::all_column_subsets_full_rank(&aug)?;
                if mds != (weight == code.len() - code.k()) {
                    return Err(Error::CrossCheck(format!(
                        "coset weight {weight} but augmented code MDS = {mds}"
                    )));
                }
                Some(mds)
            }
        }
    };
    Ok(DeepHoleVerdict {
        is_deep_hole: weight == radius,
        coset_weight: weight,
        covering_radius: radius,
        method: if augmented_mds.is_some() {
            "bfs+augmented-mds"
        } else {
            "bfs"
        },
        augmented_mds,
    })
}

/// The dual of `C1` and the extension vector `e` for an MDS parameter set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualDeepHole {
    pub covering_radius: usize,
    pub coset_weight: usize,
    pub e_is_deep_hole: bool,
    pub extended_mds: bool,
}

/// For MDS parameters: the dual of `C1` has covering radius `k` and `e`
/// is one of its deep holes.
pub fn dual_c1_deep_hole(p: &EtgrsParams) -> Result<DualDeepHole> {
    if !etgrs::mds_check(p)?.verdict {
        return Err(Error::Precondition(
            "the MDS criterion does not hold".into(),
        ));
    }
    let c1 = p.code_c1();
    let dual = c1.dual().clone();
    let e = etgrs::extension_vector(p);
    let table = CosetTable::new(&dual)?;
    let radius = table.covering_radius();
    let weight = table.coset_weight(&e)?;
    let extended = c1.extend(&e)?;
    let extended_mds = code::classify_columns(extended.generator())? == CodeClass::Mds;
    let deep = weight == radius;
    if radius != p.k || !deep || !extended_mds {
        return Err(Error::CrossCheck(format!(
            "dual of C1: radius {radius} (expected {}), coset weight of e {weight}, extension MDS = {extended_mds}",
            p.k
        )));
    }
    Ok(DualDeepHole {
        covering_radius: radius,
        coset_weight: weight,
        e_is_deep_hole: deep,
        extended_mds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::grs_code;
    use proptest::prelude::*;

    fn gf(p: u64, m: u32) -> Field {
        Field::new(p, m, None).unwrap()
    }

    /// Coset weights by walking every vector of the space.
    fn exhaustive(code: &LinearCode) -> Vec<u8> {
        let f = code.field();
        let n = code.len();
        let table = CosetTable::new(code).unwrap();
        let mut best = vec![u8::MAX; table.weights().len()];
        let mut x = vec![Element::ZERO; n];
        let q = f.order();
        loop {
            let s = table.syndrome_index(&x).unwrap();
            let w = code::weight(&x) as u8;
            best[s] = best[s].min(w);
            let mut i = 0;
            while i < n {
                x[i] = Element((x[i].value() + 1) % q);
                if !x[i].is_zero() {
                    break;
                }
                i += 1;
            }
            if i == n {
                break;
            }
        }
        best
    }

    fn random_code(f: &Field, n: usize, k: usize, seed: u64) -> LinearCode {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let q = f.order();
        loop {
            let rows: Vec<Vec<Element>> = (0..k)
                .map(|_| (0..n).map(|_| Element(rng.gen_range(0..q))).collect())
                .collect();
            if let Ok(m) = Matrix::from_rows(f, &rows) {
                if let Ok(c) = LinearCode::from_generator(&m) {
                    return c;
                }
            }
        }
    }

    #[test]
    fn hamming_code_is_perfect() {
        let f = gf(2, 1);
        let h = Matrix::from_rows(
            &f,
            &[
                [1, 0, 1, 0, 1, 0, 1].iter().map(|&x| Element(x)).collect(),
                [0, 1, 1, 0, 0, 1, 1].iter().map(|&x| Element(x)).collect(),
                [0, 0, 0, 1, 1, 1, 1].iter().map(|&x| Element(x)).collect(),
            ],
        )
        .unwrap();
        let code = LinearCode::from_generator(&h.kernel_basis()).unwrap();
        let t = CosetTable::new(&code).unwrap();
        assert_eq!(t.covering_radius(), 1);
        assert_eq!(t.weight_distribution(), vec![1, 7]);
    }

    #[test]
    fn grs_radius_is_redundancy() {
        let f = gf(7, 1);
        let alpha: Vec<Element> = (0..6).map(|i| f.elem(i)).collect();
        let code = grs_code(&f, &alpha, &[Element::ONE; 6], 3).unwrap();
        assert_eq!(covering_radius(&code).unwrap(), 3);
        // alpha^k is a deep hole of a GRS code
        let x: Vec<Element> = alpha.iter().map(|&a| f.pow_u(a, 3)).collect();
        let v = is_deep_hole(&code, &x).unwrap();
        assert!(v.is_deep_hole);
        assert_eq!(v.augmented_mds, Some(true));
        let c = code.encode(&[f.elem(1), f.elem(2), f.elem(3)]).unwrap();
        assert_eq!(coset_weight(&code, &c).unwrap(), 0);
    }

    #[test]
    fn full_code_has_radius_zero() {
        let f = gf(3, 1);
        let code = LinearCode::full(&f, 4);
        assert_eq!(covering_radius(&code).unwrap(), 0);
    }

    #[test]
    fn budget_guard() {
        let f = gf(13, 1);
        let alpha: Vec<Element> = (0..13).map(|i| f.elem(i)).collect();
        let code = grs_code(&f, &alpha, &[Element::ONE; 13], 2).unwrap();
        assert!(matches!(CosetTable::new(&code), Err(Error::Budget { .. })));
    }

    #[test]
    fn dump_round_trip() {
        let f = gf(2, 3);
        let code = random_code(&f, 5, 3, 7);
        let t = CosetTable::new(&code).unwrap();
        let mut buf = Vec::new();
        t.write_dump(&mut buf).unwrap();
        assert!(buf.starts_with(b"2^3/1,1,0,1\n"));
        let back = read_dump(buf.as_slice()).unwrap();
        assert_eq!((back.n, back.k), (5, 3));
        assert_eq!(back.weights, t.weights());
        assert_eq!(back.field, f);
        buf.pop();
        assert!(matches!(read_dump(buf.as_slice()), Err(Error::Dump(_))));
    }

    #[test]
    fn dual_of_c1_for_mds_pair() {
        let f = gf(11, 1);
        let alpha: Vec<Element> = (0..6).map(|i| f.elem(i)).collect();
        let p = etgrs::build_params(
            &f,
            6,
            3,
            1,
            alpha,
            vec![Element::ONE; 6],
            f.elem(4),
            f.elem(7),
        )
        .unwrap();
        let r = dual_c1_deep_hole(&p).unwrap();
        assert_eq!(r.covering_radius, 3);
        assert!(r.e_is_deep_hole && r.extended_mds);
        let q = etgrs::build_params(
            &f,
            6,
            3,
            1,
            p.alpha.clone(),
            p.v.clone(),
            f.elem(4),
            f.elem(6),
        )
        .unwrap();
        assert!(matches!(dual_c1_deep_hole(&q), Err(Error::Precondition(_))));
    }

    #[test]
    fn shallow_vectors_are_not_deep_holes() {
        use rand::{Rng, SeedableRng};
        let f = gf(13, 1);
        let alpha: Vec<Element> = [1, 2, 3, 7, 8, 9].iter().map(|&a| f.elem(a)).collect();
        let p = etgrs::build_params(
            &f,
            6,
            3,
            1,
            alpha,
            vec![Element::ONE; 6],
            f.elem(9),
            f.elem(2),
        )
        .unwrap();
        let code = p.code();
        let table = CosetTable::new(&code).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let x = loop {
            let x: Vec<Element> = (0..8).map(|_| Element(rng.gen_range(0..13))).collect();
            if table.coset_weight(&x).unwrap() < table.covering_radius() {
                break x;
            }
        };
        assert!(!is_deep_hole(&code, &x).unwrap().is_deep_hole);
        let c = code.encode(&[f.elem(1), f.elem(0), f.elem(5)]).unwrap();
        assert!(!is_deep_hole(&code, &c).unwrap().is_deep_hole);
        assert!(matches!(
            is_deep_hole(&code, &c[..7]),
            Err(Error::Dimension(_))
        ));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn bfs_matches_exhaustive(
            (p, m, n) in prop::sample::select(vec![(2u64, 1u32, 8usize), (3, 1, 6), (2, 2, 5), (5, 1, 5), (7, 1, 4), (2, 3, 4)]),
            kfrac in 0.0f64..1.0,
            seed in any::<u64>(),
        ) {
            let f = gf(p, m);
            let k = 1 + ((n - 1) as f64 * kfrac) as usize;
            let code = random_code(&f, n, k, seed);
            let t = CosetTable::new(&code).unwrap();
            let oracle = exhaustive(&code);
            prop_assert_eq!(t.weights(), oracle.as_slice());
        }

        #[test]
        fn supercode_bound(seed in any::<u64>(), k in 1usize..4) {
            // C inside C' = C + <y>: rho(C) is at least the least weight of C' \ C
            let f = gf(3, 1);
            let n = 6;
            let small = random_code(&f, n, k, seed);
            let extra = random_code(&f, n, 1, seed ^ 0x9e37).generator().row(0).to_vec();
            prop_assume!(!small.contains(&extra).unwrap());
            let big = LinearCode::from_generator(&small.generator().append_row(&extra).unwrap()).unwrap();
            let mut least = usize::MAX;
            let mut msg = vec![Element::ZERO; big.k()];
            loop {
                let c = big.encode(&msg).unwrap();
                if !small.contains(&c).unwrap() {
                    least = least.min(code::weight(&c));
                }
                let mut i = 0;
                while i < msg.len() {
                    msg[i] = Element((msg[i].value() + 1) % 3);
                    if !msg[i].is_zero() { break; }
                    i += 1;
                }
                if i == msg.len() { break; }
            }
            let rho = covering_radius(&small).unwrap();
            prop_assert!(rho >= least);
            prop_assert!(rho <= n - k);
        }
    }
}
