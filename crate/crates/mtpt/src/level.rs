//! Integer vectors with infinities and max-min-skewed convolution.
//!
//! The convolution computed here is, for vectors `A` and `B`,
//!
//! ```text
//! C[k] = max_i min{ A[i], B[k-i] - i }
//! ```
//!
//! with `i` ranging over the index overlaps that keep both accesses in
//! bounds. (An equivalent formulation skews by the output index,
//! `B[k-i] + k`; everything here uses the `- i` form.)
//!
//! [`mms_definitional`] evaluates the formula verbatim and serves as the
//! reference. Production paths go through an [`MmsBackend`], which must
//! agree with the reference entry for entry; the shipped `naive` backend
//! is a cache-friendly quadratic kernel over a sentinel-band integer
//! encoding, and the `definitional` backend is the reference itself.

use std::fmt;

use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConvolutionError {
    #[error("unknown convolution backend {0:?}")]
    UnknownBackend(String),
    #[error("window {lo}..{hi} out of range for vector of length {len}")]
    WindowOutOfRange { lo: usize, hi: usize, len: usize },
}

/// An integer extended with `-∞` and `+∞` sentinels.
///
/// Finite values must stay below 2^40 in magnitude so that sentinel
/// arithmetic can never collide with finite arithmetic.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExtInt(i64);

impl ExtInt {
    pub const NEG_INF: ExtInt = ExtInt(i64::MIN);
    pub const POS_INF: ExtInt = ExtInt(i64::MAX);
    pub const ZERO: ExtInt = ExtInt(0);

    pub fn finite(v: i64) -> ExtInt {
        debug_assert!(v.unsigned_abs() < 1 << 40, "finite value out of range");
        ExtInt(v)
    }

    pub fn is_finite(&self) -> bool {
        *self != Self::NEG_INF && *self != Self::POS_INF
    }

    pub fn value(&self) -> Option<i64> {
        self.is_finite().then_some(self.0)
    }

    /// Subtracts a finite amount; sentinels absorb the subtraction.
    pub fn sub_finite(self, k: i64) -> ExtInt {
        if self.is_finite() {
            ExtInt::finite(self.0 - k)
        } else {
            self
        }
    }
}

impl fmt::Debug for ExtInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ExtInt::NEG_INF => write!(f, "-inf"),
            ExtInt::POS_INF => write!(f, "+inf"),
            ExtInt(v) => write!(f, "{}", v),
        }
    }
}

/// A vector of [`ExtInt`] entries indexed by load.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelVector {
    entries: Vec<ExtInt>,
}

impl LevelVector {
    pub fn new(entries: Vec<ExtInt>) -> Self {
        assert!(!entries.is_empty(), "level vector must be nonempty");
        LevelVector { entries }
    }

    /// A vector of the given length filled with `-∞`.
    pub fn neg_inf(len: usize) -> Self {
        LevelVector::new(vec![ExtInt::NEG_INF; len])
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn as_slice(&self) -> &[ExtInt] {
        &self.entries
    }

    pub fn set(&mut self, i: usize, v: ExtInt) {
        self.entries[i] = v;
    }
}

impl std::ops::Index<usize> for LevelVector {
    type Output = ExtInt;
    fn index(&self, i: usize) -> &ExtInt {
        &self.entries[i]
    }
}

/// Reference evaluation of the convolution formula, entry by entry.
pub fn mms_definitional(a: &LevelVector, b: &LevelVector) -> LevelVector {
    let (la, lb) = (a.len(), b.len());
    let mut out = Vec::with_capacity(la + lb - 1);
    for k in 0..la + lb - 1 {
        let lo = k.saturating_sub(lb - 1);
        let hi = k.min(la - 1);
        let mut best = ExtInt::NEG_INF;
        for i in lo..=hi {
            let candidate = a[i].min(b[k - i].sub_finite(i as i64));
            best = best.max(candidate);
        }
        out.push(best);
    }
    LevelVector::new(out)
}

// Sentinel band encoding used by the quadratic kernel: finite values pass
// through unchanged, infinities map to values so large in magnitude that no
// amount of index skewing can push them into (or out of) the finite range.
const NEG_BAND: i64 = i64::MIN / 4;
const POS_BAND: i64 = i64::MAX / 4;

fn encode(e: ExtInt) -> i64 {
    match e {
        ExtInt::NEG_INF => NEG_BAND,
        ExtInt::POS_INF => POS_BAND,
        ExtInt(v) => v,
    }
}

fn decode(v: i64) -> ExtInt {
    if v <= NEG_BAND / 2 {
        ExtInt::NEG_INF
    } else if v >= POS_BAND / 2 {
        ExtInt::POS_INF
    } else {
        ExtInt::finite(v)
    }
}

fn encode_slice(entries: &[ExtInt]) -> Vec<i64> {
    entries.iter().map(|&e| encode(e)).collect()
}

// The i32 band. Finite values and indices below this limit leave enough
// headroom that skew subtraction can neither wrap nor cross a band edge.
const NEG_BAND32: i32 = i32::MIN / 4;
const POS_BAND32: i32 = i32::MAX / 4;
const I32_SAFE: u64 = 1 << 26;

/// Re-encodes into `buf`; false when a finite value does not fit the band.
fn encode_slice32(entries: &[ExtInt], buf: &mut Vec<i32>) -> bool {
    buf.clear();
    buf.reserve(entries.len());
    for &e in entries {
        let v = match e {
            ExtInt::NEG_INF => NEG_BAND32,
            ExtInt::POS_INF => POS_BAND32,
            ExtInt(v) => {
                if v.unsigned_abs() >= I32_SAFE {
                    return false;
                }
                v as i32
            }
        };
        buf.push(v);
    }
    true
}

fn decode32(v: i32) -> ExtInt {
    if v <= NEG_BAND32 / 2 {
        ExtInt::NEG_INF
    } else if v >= POS_BAND32 / 2 {
        ExtInt::POS_INF
    } else {
        ExtInt::finite(v as i64)
    }
}

// Both kernels accumulate `out[y] = max(out[y], min(a[j], b[y - i] - i))`
// for every row `j` of `a`, where `i = a_off + j` is the row's absolute
// index and `out` covers absolute outputs `[y_lo, y_lo + out.len())`. Rows
// encoding `-∞` contribute nothing and are skipped. Band encoding keeps
// every value far from the integer limits, so the skew subtraction cannot
// wrap; wrapping_sub lets the inner loops vectorize.

fn accumulate_i64(a: &[i64], a_off: usize, b: &[i64], y_lo: usize, out: &mut [i64]) {
    let y_hi = y_lo + out.len();
    for (j, &av) in a.iter().enumerate() {
        if av <= NEG_BAND / 2 {
            continue;
        }
        let i = a_off + j;
        if i >= y_hi {
            break;
        }
        let z_lo = y_lo.saturating_sub(i);
        let z_hi = b.len().min(y_hi - i);
        if z_lo >= z_hi {
            continue;
        }
        let ii = i as i64;
        let base = i - y_lo;
        let row = &mut out[base + z_lo..base + z_hi];
        for (o, &bv) in row.iter_mut().zip(&b[z_lo..z_hi]) {
            *o = (*o).max(av.min(bv.wrapping_sub(ii)));
        }
    }
}

fn accumulate_i32(a: &[i32], a_off: usize, b: &[i32], y_lo: usize, out: &mut [i32]) {
    let y_hi = y_lo + out.len();
    for (j, &av) in a.iter().enumerate() {
        if av <= NEG_BAND32 / 2 {
            continue;
        }
        let i = a_off + j;
        if i >= y_hi {
            break;
        }
        let z_lo = y_lo.saturating_sub(i);
        let z_hi = b.len().min(y_hi - i);
        if z_lo >= z_hi {
            continue;
        }
        let ii = i as i32;
        let base = i - y_lo;
        let row = &mut out[base + z_lo..base + z_hi];
        for (o, &bv) in row.iter_mut().zip(&b[z_lo..z_hi]) {
            *o = (*o).max(av.min(bv.wrapping_sub(ii)));
        }
    }
}

thread_local! {
    static SCRATCH32: std::cell::RefCell<(Vec<i32>, Vec<i32>, Vec<i32>)> =
        const { std::cell::RefCell::new((Vec::new(), Vec::new(), Vec::new())) };
}

/// One decoded accumulation pass: rows `a` living at absolute offset
/// `a_off`, columns `b`, outputs covering `[y_lo, y_lo + out_len)`.
pub(crate) fn accumulate_window(
    a: &[ExtInt],
    a_off: usize,
    b: &[ExtInt],
    y_lo: usize,
    out_len: usize,
) -> Vec<ExtInt> {
    let index_limit = (a_off + a.len()).max(y_lo + out_len) as u64;
    if index_limit < I32_SAFE {
        let narrow = SCRATCH32.with(|cell| {
            let (ea, eb, out) = &mut *cell.borrow_mut();
            if !encode_slice32(a, ea) || !encode_slice32(b, eb) {
                return None;
            }
            out.clear();
            out.resize(out_len, NEG_BAND32);
            accumulate_i32(ea, a_off, eb, y_lo, out);
            Some(out.iter().map(|&v| decode32(v)).collect())
        });
        if let Some(result) = narrow {
            return result;
        }
    }
    let ea = encode_slice(a);
    let eb = encode_slice(b);
    let mut out = vec![NEG_BAND; out_len];
    accumulate_i64(&ea, a_off, &eb, y_lo, &mut out);
    out.into_iter().map(decode).collect()
}

fn kernel_convolve(a: &LevelVector, b: &LevelVector) -> LevelVector {
    LevelVector::new(accumulate_window(
        a.as_slice(),
        0,
        b.as_slice(),
        0,
        a.len() + b.len() - 1,
    ))
}

/// Convolution of `a` and `b` where every entry of `a` outside `lo..hi` is
/// known to be `-∞`. Output shape matches [`mms_definitional`], but only the
/// window rows are visited, so the cost is proportional to
/// `(hi - lo) * b.len()` plus the output length.
pub fn mms_windowed(
    a: &LevelVector,
    lo: usize,
    hi: usize,
    b: &LevelVector,
) -> Result<LevelVector, ConvolutionError> {
    if lo > hi || hi > a.len() {
        return Err(ConvolutionError::WindowOutOfRange {
            lo,
            hi,
            len: a.len(),
        });
    }
    debug_assert!(
        a.as_slice()
            .iter()
            .enumerate()
            .all(|(i, &e)| (lo..hi).contains(&i) || e == ExtInt::NEG_INF),
        "entries outside the window must be -inf"
    );
    Ok(LevelVector::new(accumulate_window(
        &a.as_slice()[lo..hi],
        lo,
        b.as_slice(),
        0,
        a.len() + b.len() - 1,
    )))
}

/// A provider of max-min-skewed convolutions.
///
/// Every backend must produce output identical to [`mms_definitional`]; the
/// advertised `alpha` is the exponent of its running time on size-`n`
/// inputs, used to tune the bundling parameter.
pub trait MmsBackend: Sync {
    fn name(&self) -> &'static str;
    fn alpha(&self) -> Rational;
    fn convolve(&self, a: &LevelVector, b: &LevelVector) -> LevelVector;
}

struct NaiveBackend;

impl MmsBackend for NaiveBackend {
    fn name(&self) -> &'static str {
        "naive"
    }

    fn alpha(&self) -> Rational {
        Rational::integer(2)
    }

    fn convolve(&self, a: &LevelVector, b: &LevelVector) -> LevelVector {
        kernel_convolve(a, b)
    }
}

struct DefinitionalBackend;

impl MmsBackend for DefinitionalBackend {
    fn name(&self) -> &'static str {
        "definitional"
    }

    fn alpha(&self) -> Rational {
        Rational::integer(2)
    }

    fn convolve(&self, a: &LevelVector, b: &LevelVector) -> LevelVector {
        mms_definitional(a, b)
    }
}

static NAIVE: NaiveBackend = NaiveBackend;
static DEFINITIONAL: DefinitionalBackend = DefinitionalBackend;
static REGISTRY: [&dyn MmsBackend; 2] = [&NAIVE, &DEFINITIONAL];

/// All registered backends; `naive` comes first and is the default.
pub fn backends() -> &'static [&'static dyn MmsBackend] {
    &REGISTRY
}

/// Looks a backend up by name.
pub fn backend(name: &str) -> Result<&'static dyn MmsBackend, ConvolutionError> {
    REGISTRY
        .iter()
        .find(|b| b.name() == name)
        .copied()
        .ok_or_else(|| ConvolutionError::UnknownBackend(name.to_string()))
}

pub fn default_backend() -> &'static dyn MmsBackend {
    REGISTRY[0]
}

/// Convolves through the named backend.
pub fn mms_convolve(
    name: &str,
    a: &LevelVector,
    b: &LevelVector,
) -> Result<LevelVector, ConvolutionError> {
    Ok(backend(name)?.convolve(a, b))
}
