//! Candidate search over circulant first rows or monic divisors of
//! X^(2m) - 1, and Hadamard-power families.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Elem, FieldSpec};
use crate::matrix::FMatrix;
use crate::mds::{is_involutory, is_mds, MdsReport, MAX_MDS_ORDER};
use crate::skew::SkewPoly;
use crate::structured::{delta_theta_circulant, quasi_recursive_product, TwistFamily};
use crate::text::{format_elem, format_poly, Notation};
use crate::twist::ThetaDerivation;

/// Exhaustive search is used up to this many candidates.
pub const EXHAUSTIVE_LIMIT: u128 = 1 << 20;
pub const DEFAULT_SAMPLES: usize = 1 << 16;
pub const THREADS_ENV: &str = "MDSKIT_THREADS";
const CHUNK: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    Circulant,
    Recursive,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Requirements {
    pub mds: bool,
    pub involutory: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub field: FieldSpec,
    pub theta_k: u32,
    pub beta: Option<Elem>,
    pub m: usize,
    pub mode: SearchMode,
    pub require: Requirements,
    pub limit: usize,
    pub seed: u64,
    /// Candidates drawn when the space is too large for exhaustive search.
    pub samples: usize,
}

impl SearchConfig {
    pub fn new(field: FieldSpec, m: usize, mode: SearchMode) -> Self {
        SearchConfig {
            field,
            theta_k: 0,
            beta: None,
            m,
            mode,
            require: Requirements::default(),
            limit: usize::MAX,
            seed: 0,
            samples: DEFAULT_SAMPLES,
        }
    }

    pub fn space_size(&self) -> u128 {
        (self.field.size() as u128)
            .checked_pow(self.m as u32)
            .unwrap_or(u128::MAX)
    }

    pub fn is_exhaustive(&self) -> bool {
        self.space_size() <= EXHAUSTIVE_LIMIT
    }

    fn validate(&self) -> Result<ThetaDerivation> {
        if self.m < 2 {
            return Err(Error::Precondition("m must be at least 2".into()));
        }
        if self.m > MAX_MDS_ORDER {
            return Err(Error::OrderTooLarge {
                order: self.m,
                max: MAX_MDS_ORDER,
            });
        }
        if self.limit == 0 {
            return Err(Error::Precondition("limit must be at least 1".into()));
        }
        if self.mode == SearchMode::Recursive && self.beta.is_some_and(|b| !b.is_zero()) {
            return Err(Error::DerivationNotZero);
        }
        ThetaDerivation::from_parts(self.field, self.theta_k, self.beta)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchRecord {
    pub mode: SearchMode,
    /// First row (circulant) or g_0..g_{m-1} of the monic g (recursive).
    pub candidate: String,
    pub mds: bool,
    pub involutory: bool,
    pub rows: Vec<Vec<String>>,
}

/// Rayon pool capped by `MDSKIT_THREADS` when set.
pub fn configured_pool() -> rayon::ThreadPool {
    let threads = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .unwrap_or(0);
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool")
}

fn candidate_from_index(field: FieldSpec, m: usize, mut idx: u128) -> Vec<Elem> {
    let q = field.size() as u128;
    (0..m)
        .map(|_| {
            let e = Elem((idx % q) as u16);
            idx /= q;
            e
        })
        .collect()
}

/// Runs the search; results come back in canonical candidate order
/// regardless of thread count.
pub fn run_search(cfg: &SearchConfig) -> Result<Vec<SearchRecord>> {
    let d = cfg.validate()?;
    let total: u128 = if cfg.is_exhaustive() {
        cfg.space_size()
    } else {
        cfg.samples as u128
    };
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut records = Vec::new();
    let pool = configured_pool();
    let mut start = 0u128;
    while start < total && records.len() < cfg.limit {
        let end = (start + CHUNK as u128).min(total);
        let batch: Vec<Vec<Elem>> = (start..end)
            .map(|i| {
                if cfg.is_exhaustive() {
                    candidate_from_index(cfg.field, cfg.m, i)
                } else {
                    (0..cfg.m)
                        .map(|_| Elem(rng.gen_range(0..cfg.field.size()) as u16))
                        .collect()
                }
            })
            .collect();
        let found: Vec<Option<SearchRecord>> = pool.install(|| {
            batch
                .par_iter()
                .map(|c| evaluate(cfg, &d, c))
                .collect::<Result<Vec<_>>>()
        })?;
        records.extend(found.into_iter().flatten());
        start = end;
    }
    records.truncate(cfg.limit);
    Ok(records)
}

fn evaluate(cfg: &SearchConfig, d: &ThetaDerivation, candidate: &[Elem]) -> Result<Option<SearchRecord>> {
    let matrix = match cfg.mode {
        SearchMode::Circulant => delta_theta_circulant(candidate, d)?,
        SearchMode::Recursive => {
            let mut coeffs = candidate.to_vec();
            coeffs.push(Elem::ONE);
            let g = SkewPoly::new(*d, coeffs)?;
            if !g.is_right_divisor_of(&SkewPoly::x_pow_minus_one(*d, 2 * cfg.m))? {
                return Ok(None);
            }
            quasi_recursive_product(&g, cfg.m as u32, TwistFamily::Bracket)?
        }
    };
    let involutory = is_involutory(&matrix);
    if cfg.require.involutory && !involutory {
        return Ok(None);
    }
    let mds = is_mds(&matrix)?.is_mds;
    if cfg.require.mds && !mds {
        return Ok(None);
    }
    Ok(Some(SearchRecord {
        mode: cfg.mode,
        candidate: candidate
            .iter()
            .map(|&e| format_elem(cfg.field, e, Notation::Hex))
            .collect::<Vec<_>>()
            .join(","),
        mds,
        involutory,
        rows: hex_rows(&matrix),
    }))
}

pub fn hex_rows(m: &FMatrix) -> Vec<Vec<String>> {
    m.to_rows()
        .into_iter()
        .map(|r| {
            r.into_iter()
                .map(|e| format_elem(m.field(), e, Notation::Hex))
                .collect()
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HadamardMember {
    pub t: u32,
    pub poly: SkewPoly,
    pub matrix: FMatrix,
    pub report: MdsReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HadamardRecord {
    pub t: u32,
    pub exponent: u64,
    pub poly: String,
    pub mds: bool,
    pub rows: Vec<Vec<String>>,
}

impl HadamardMember {
    pub fn record(&self, notation: Notation) -> HadamardRecord {
        let f = self.matrix.field();
        HadamardRecord {
            t: self.t,
            exponent: 1 << self.t,
            poly: format_poly(&self.poly, notation),
            mds: self.report.is_mds,
            rows: self
                .matrix
                .to_rows()
                .into_iter()
                .map(|r| r.into_iter().map(|e| format_elem(f, e, notation)).collect())
                .collect(),
        }
    }
}

/// g^(diamond 2^t) for t = 1, 2, ... while 2^t <= q - 1, each with its
/// quasi-recursive product C^[m-1] ... C and MDS verdict. The base must
/// itself yield an MDS product.
pub fn hadamard_family(g: &SkewPoly) -> Result<Vec<HadamardMember>> {
    let m = match g.degree() {
        Some(m) if m >= 1 && g.is_monic() => m as u32,
        _ => return Err(Error::NotMonic),
    };
    let base = quasi_recursive_product(g, m, TwistFamily::Bracket)?;
    if !is_mds(&base)?.is_mds {
        return Err(Error::BaseNotMds);
    }
    let q_minus_1 = g.field().size() as u64 - 1;
    let mut out = Vec::new();
    let mut t = 1u32;
    while (1u64 << t) <= q_minus_1 {
        let poly = g.hadamard_power(1 << t);
        let matrix = quasi_recursive_product(&poly, m, TwistFamily::Bracket)?;
        let report = is_mds(&matrix)?;
        out.push(HadamardMember {
            t,
            poly,
            matrix,
            report,
        });
        t += 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf16() -> FieldSpec {
        FieldSpec::gf16()
    }

    #[test]
    fn recursive_search_finds_divisor() {
        let mut cfg = SearchConfig::new(gf16(), 2, SearchMode::Recursive);
        cfg.theta_k = 2;
        cfg.require = Requirements {
            mds: true,
            involutory: true,
        };
        let out = run_search(&cfg).unwrap();
        assert!(out.iter().any(|r| r.candidate == "0xc,0x2"));
        assert!(out.iter().all(|r| r.mds && r.involutory));
        assert_eq!(out.len(), 20);
    }

    #[test]
    fn limit_one() {
        let mut cfg = SearchConfig::new(gf16(), 2, SearchMode::Circulant);
        cfg.limit = 1;
        assert_eq!(run_search(&cfg).unwrap().len(), 1);
    }

    #[test]
    fn deterministic_sampling() {
        let f = FieldSpec::new(8, 0x11d, None).unwrap();
        let mut cfg = SearchConfig::new(f, 3, SearchMode::Circulant);
        cfg.samples = 300;
        cfg.seed = 42;
        cfg.require.mds = true;
        assert!(!cfg.is_exhaustive());
        let a = run_search(&cfg).unwrap();
        let b = run_search(&cfg).unwrap();
        assert_eq!(a, b);
        assert!(!a.is_empty());
        cfg.seed = 43;
        assert_ne!(run_search(&cfg).unwrap(), a);
    }

    #[test]
    fn config_validation() {
        let mut cfg = SearchConfig::new(gf16(), 1, SearchMode::Circulant);
        assert!(run_search(&cfg).is_err());
        cfg.m = 2;
        cfg.limit = 0;
        assert!(run_search(&cfg).is_err());
        cfg.limit = 1;
        cfg.mode = SearchMode::Recursive;
        cfg.theta_k = 1;
        cfg.beta = Some(Elem(1));
        assert_eq!(run_search(&cfg), Err(Error::DerivationNotZero));
    }

    #[test]
    fn hadamard_family_rejects_non_mds_base() {
        let d = ThetaDerivation::zero(crate::field::Automorphism::identity(gf16()));
        let g = SkewPoly::from_bits(d, &[1, 0, 1]).unwrap();
        assert_eq!(hadamard_family(&g), Err(Error::BaseNotMds));
    }

    #[test]
    fn hadamard_family_size() {
        let d = ThetaDerivation::zero(crate::field::Automorphism::new(gf16(), 2).unwrap());
        let g = SkewPoly::from_bits(d, &[0xc, 2, 1]).unwrap();
        let fam = hadamard_family(&g).unwrap();
        // 2^t <= 15
        assert_eq!(fam.iter().map(|m| m.t).collect::<Vec<_>>(), vec![1, 2, 3]);
    }
}
