use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

/// Default cap on the bit length of exactly materialised values.
pub const DEFAULT_CAP_BITS: u64 = 1_000_000;

#[derive(Clone, Debug)]
enum Form {
    Atom,
    Power(Box<TowerInt>, Box<TowerInt>),
    Product(Vec<TowerInt>),
}

/// A nonnegative integer that may be too large to write down.
///
/// Values whose bit length stays under the cap carry an exact `BigUint`;
/// larger ones keep only their construction (`a^b`, `a*b`) and an estimate
/// of `log2(log2(value))`. The construction is kept for exact values too,
/// so huge-but-exact numbers still render compactly.
#[derive(Clone, Debug)]
pub struct TowerInt {
    value: Option<BigUint>,
    form: Form,
    loglog: f64,
}

fn log2_big(v: &BigUint) -> f64 {
    let bits = v.bits();
    if bits <= 1000 {
        return v.to_f64().expect("small").log2();
    }
    let shift = bits - 64;
    (v >> shift).to_f64().expect("64 bits").log2() + shift as f64
}

impl TowerInt {
    pub fn exact(v: impl Into<BigUint>) -> Self {
        let v: BigUint = v.into();
        let loglog = if v.bits() <= 1 { f64::NEG_INFINITY } else { log2_big(&v).log2() };
        TowerInt { value: Some(v), form: Form::Atom, loglog }
    }

    pub fn zero() -> Self {
        TowerInt::exact(0u32)
    }

    pub fn one() -> Self {
        TowerInt::exact(1u32)
    }

    pub fn value(&self) -> Option<&BigUint> {
        self.value.as_ref()
    }

    pub fn is_exact(&self) -> bool {
        self.value.is_some()
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.value.as_ref()?.to_u64()
    }

    /// Estimate of `log2(log2(self))`; `-inf` for 0 and 1.
    pub fn log2_log2(&self) -> f64 {
        self.loglog
    }

    /// Estimate of `log2(self)`; may be `inf`.
    pub fn log2(&self) -> f64 {
        match &self.value {
            Some(v) if v.is_zero() => f64::NEG_INFINITY,
            Some(v) => log2_big(v),
            None => self.loglog.exp2(),
        }
    }

    fn is_zero(&self) -> bool {
        self.value.as_ref().is_some_and(Zero::is_zero)
    }

    fn is_one(&self) -> bool {
        self.value.as_ref().is_some_and(One::is_one)
    }

    /// `self^exponent`, exact when the result fits in `cap_bits`.
    pub fn pow(&self, exponent: &TowerInt, cap_bits: u64) -> TowerInt {
        if exponent.is_zero() || self.is_one() {
            return TowerInt::one();
        }
        if self.is_zero() {
            return TowerInt::zero();
        }
        if exponent.is_one() {
            return self.clone();
        }
        // normalise (2^k)^e to 2^(k*e) so powers of two render uniformly
        if let Some(v) = &self.value {
            let k = v.trailing_zeros().unwrap_or(0);
            if k >= 2 && (v >> k).is_one() {
                let two = TowerInt::exact(2u32);
                return two.pow(&TowerInt::exact(k).mul(exponent, cap_bits), cap_bits);
            }
        }
        if let Form::Power(b, e) = &self.form {
            if self.value.is_none() {
                return b.pow(&e.mul(exponent, cap_bits), cap_bits);
            }
        }
        let loglog = exponent.log2() + self.log2().log2();
        let value = match (&self.value, exponent.to_u64()) {
            (Some(b), Some(e)) if loglog <= (cap_bits as f64).log2() + 1.0 => {
                let e32 = u32::try_from(e).ok();
                e32.map(|e| b.pow(e)).filter(|v| v.bits() <= cap_bits)
            }
            _ => None,
        };
        let loglog = value.as_ref().map(|v| log2_big(v).log2()).unwrap_or(loglog);
        TowerInt { value, form: Form::Power(Box::new(self.clone()), Box::new(exponent.clone())), loglog }
    }

    pub fn mul(&self, other: &TowerInt, cap_bits: u64) -> TowerInt {
        if self.is_zero() || other.is_zero() {
            return TowerInt::zero();
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        let value = match (&self.value, &other.value) {
            (Some(a), Some(b)) if a.bits() + b.bits() <= cap_bits + 1 => Some(a * b).filter(|v| v.bits() <= cap_bits),
            _ => None,
        };
        let loglog = match &value {
            Some(v) => log2_big(v).log2(),
            None => {
                let (la, lb) = (self.log2(), other.log2());
                let (hi, lo) = (la.max(lb), la.min(lb));
                (hi + (lo - hi).exp2().ln_1p() / std::f64::consts::LN_2).log2()
            }
        };
        let mut factors = Vec::new();
        for t in [self, other] {
            match &t.form {
                Form::Product(fs) => factors.extend(fs.iter().cloned()),
                _ => factors.push(t.clone()),
            }
        }
        factors.sort_by_key(|f| !matches!(f.form, Form::Atom));
        TowerInt { value, form: Form::Product(factors), loglog }
    }

    pub fn add_small(&self, k: u64, cap_bits: u64) -> TowerInt {
        match &self.value {
            Some(v) if v.bits() < cap_bits => TowerInt::exact(v + k),
            // symbolic values are astronomically larger than k
            _ => self.clone(),
        }
    }

    /// Exact comparison when both sides are exact; otherwise structural
    /// (same base) or by the `log2 log2` estimate.
    pub fn compare(&self, other: &TowerInt) -> Ordering {
        match (&self.value, &other.value) {
            (Some(a), Some(b)) => a.cmp(b),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => {
                if let (Form::Power(b1, e1), Form::Power(b2, e2)) = (&self.form, &other.form) {
                    if b1.compare(b2) == Ordering::Equal {
                        return e1.compare(e2);
                    }
                }
                // a product of factors >= 2 dominates each factor
                if let Form::Product(fs) = &self.form {
                    if fs.iter().any(|f| f.compare(other) != Ordering::Less) {
                        return Ordering::Greater;
                    }
                }
                if let Form::Product(fs) = &other.form {
                    if fs.iter().any(|f| f.compare(self) != Ordering::Less) {
                        return Ordering::Less;
                    }
                }
                self.loglog.partial_cmp(&other.loglog).unwrap_or(Ordering::Equal)
            }
        }
    }

    fn render_operand(&self) -> String {
        let s = self.to_string();
        if s.contains(['^', '*']) {
            format!("({s})")
        } else {
            s
        }
    }
}

impl From<u64> for TowerInt {
    fn from(v: u64) -> Self {
        TowerInt::exact(v)
    }
}

impl PartialEq for TowerInt {
    fn eq(&self, other: &Self) -> bool {
        self.compare(other) == Ordering::Equal
    }
}

impl PartialOrd for TowerInt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.compare(other))
    }
}

/// Exact decimal up to 64 digits, then `a^b`/`a*b` nesting, then a
/// `~2^(2^x)` estimate.
impl fmt::Display for TowerInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(v) = self.value.as_ref().filter(|v| v.bits() <= 216) {
            let s = v.to_string();
            if s.len() <= 64 {
                return f.write_str(&s);
            }
        }
        match &self.form {
            Form::Power(b, e) => write!(f, "{}^{}", b.render_operand(), e.render_operand()),
            Form::Product(fs) => {
                let parts: Vec<String> = fs.iter().map(TowerInt::render_operand).collect();
                f.write_str(&parts.join("*"))
            }
            Form::Atom => {
                let x = format!("{:.6}", self.loglog);
                write!(f, "~2^(2^{})", x.trim_end_matches('0').trim_end_matches('.'))
            }
        }
    }
}
