//! Family instantiators for the named positivity results, per-check
//! verdicts, an append-only verdict cache, and deterministic
//! non-negativity sweeps over whole parameter regimes.

use std::collections::{BTreeMap, HashMap};
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write as _};
use std::path::Path;
use std::sync::Mutex;
use std::time::Instant;

use num::integer::gcd;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dseries::{d_poly, d_sum, g_sum, DParams, Rational, RegimeKind};
use crate::qpoly::Polynomial;
use crate::qseries::{legendre3, qbinom};
use crate::Error;

/// Engine tag stored with cached verdicts; cache hits from other engine
/// versions are ignored.
pub const ENGINE: &str = concat!("qpos-", env!("CARGO_PKG_VERSION"));

/// The named families that can be instantiated and checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyId {
    Thm22,
    Thm23,
    Cor24,
    Thm25,
    Thm26,
    Thm27,
    ExI,
    ExII,
    BorweinA,
    BorweinB,
    BorweinC,
    F25,
}

impl FamilyId {
    pub const ALL: [FamilyId; 12] = [
        FamilyId::Thm22,
        FamilyId::Thm23,
        FamilyId::Cor24,
        FamilyId::Thm25,
        FamilyId::Thm26,
        FamilyId::Thm27,
        FamilyId::ExI,
        FamilyId::ExII,
        FamilyId::BorweinA,
        FamilyId::BorweinB,
        FamilyId::BorweinC,
        FamilyId::F25,
    ];

    pub fn parse(s: &str) -> Result<Self, Error> {
        match s.to_ascii_uppercase().as_str() {
            "THM_2_2" => Ok(FamilyId::Thm22),
            "THM_2_3" => Ok(FamilyId::Thm23),
            "COR_2_4" => Ok(FamilyId::Cor24),
            "THM_2_5" => Ok(FamilyId::Thm25),
            "THM_2_6" => Ok(FamilyId::Thm26),
            "THM_2_7" => Ok(FamilyId::Thm27),
            "EX_I" => Ok(FamilyId::ExI),
            "EX_II" => Ok(FamilyId::ExII),
            "BORWEIN_A" => Ok(FamilyId::BorweinA),
            "BORWEIN_B" => Ok(FamilyId::BorweinB),
            "BORWEIN_C" => Ok(FamilyId::BorweinC),
            "F_2_5" => Ok(FamilyId::F25),
            other => Err(Error::Parse(format!("unknown family id {other:?}"))),
        }
    }

    pub fn token(&self) -> &'static str {
        match self {
            FamilyId::Thm22 => "THM_2_2",
            FamilyId::Thm23 => "THM_2_3",
            FamilyId::Cor24 => "COR_2_4",
            FamilyId::Thm25 => "THM_2_5",
            FamilyId::Thm26 => "THM_2_6",
            FamilyId::Thm27 => "THM_2_7",
            FamilyId::ExI => "EX_I",
            FamilyId::ExII => "EX_II",
            FamilyId::BorweinA => "BORWEIN_A",
            FamilyId::BorweinB => "BORWEIN_B",
            FamilyId::BorweinC => "BORWEIN_C",
            FamilyId::F25 => "F_2_5",
        }
    }

    /// The regime this family is an instance of.
    pub fn regime(&self) -> RegimeKind {
        match self {
            FamilyId::Thm22 => RegimeKind::Corollary12,
            FamilyId::Thm23 | FamilyId::Thm26 | FamilyId::Thm27 | FamilyId::ExI | FamilyId::ExII => {
                RegimeKind::Conjecture21
            }
            FamilyId::Cor24
            | FamilyId::Thm25
            | FamilyId::BorweinA
            | FamilyId::BorweinB
            | FamilyId::BorweinC
            | FamilyId::F25 => RegimeKind::Conjecture13,
        }
    }
}

/// Integer parameter map for family instantiation, e.g. `L=2,p=2,pp=3`.
pub type ParamMap = BTreeMap<String, i64>;

pub fn parse_params(s: &str) -> Result<ParamMap, Error> {
    let mut map = ParamMap::new();
    for piece in s.split(',').filter(|p| !p.trim().is_empty()) {
        let (key, value) = piece
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected key=value, got {piece:?}")))?;
        let value: i64 = value
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad integer for {key:?}: {value:?}")))?;
        map.insert(key.trim().to_string(), value);
    }
    Ok(map)
}

fn take(map: &ParamMap, id: FamilyId, expected: &[&str]) -> Result<Vec<i64>, Error> {
    for key in map.keys() {
        if !expected.contains(&key.as_str()) {
            return Err(Error::Range(format!(
                "unexpected parameter {key:?} for {} (expected {})",
                id.token(),
                expected.join(", ")
            )));
        }
    }
    expected
        .iter()
        .map(|key| {
            map.get(*key).copied().ok_or_else(|| {
                Error::Range(format!("missing parameter {key:?} for {}", id.token()))
            })
        })
        .collect()
}

fn rat(n: i64) -> Rational {
    Rational::from_integer(n)
}

fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<(), Error> {
    if cond {
        Ok(())
    } else {
        Err(Error::Range(msg()))
    }
}

fn sized(n: i64, m: i64) -> Result<(), Error> {
    if n < 0 || m < 0 {
        Err(Error::NegativeSize(format!("instance needs N, M >= 0, got N={n}, M={m}")))
    } else {
        Ok(())
    }
}

/// A fully instantiated family member: the parameter tuple plus any
/// independently evaluated display sums and symmetry twins that must
/// reproduce the same polynomial.
pub struct Instance {
    pub key: String,
    pub dparams: DParams,
    pub displays: Vec<(&'static str, Polynomial)>,
    pub twin: Option<DParams>,
}

/// Build the parameter tuple (and side displays) for one family member.
pub fn instantiate(id: FamilyId, params: &ParamMap) -> Result<Instance, Error> {
    let key = {
        let kv: Vec<String> = params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!("{} {}", id.token(), kv.join(" "))
    };
    match id {
        FamilyId::Thm22 => {
            let v = take(params, id, &["L", "p", "pp", "r", "s"])?;
            let (l, p, pp, r, s) = (v[0], v[1], v[2], v[3], v[4]);
            require(l >= 0, || format!("need L >= 0, got {l}"))?;
            require(p >= 1 && pp > p, || format!("need pp > p >= 1, got p={p}, pp={pp}"))?;
            require(0 < r && r < p, || format!("need 0 < r < p, got r={r}"))?;
            require(0 < s && s < pp, || format!("need 0 < s < pp, got s={s}"))?;
            let n = (l + r - s + 1).div_euclid(2);
            let m = (l - r + s).div_euclid(2);
            sized(n, m)?;
            let dparams = DParams::new(pp, s, n, m, rat(p - r), rat(r))?;
            let display = eq21_display(l, p, pp, r, s);
            Ok(Instance { key, dparams, displays: vec![("two-term sum", display)], twin: None })
        }
        FamilyId::Thm23 => {
            let v = take(params, id, &["L", "n", "p", "pp", "r", "s"])?;
            let (l, n, p, pp, r, s) = (v[0], v[1], v[2], v[3], v[4], v[5]);
            let dparams = thm23_params(l, n, p, pp, r, s)?;
            Ok(Instance { key, dparams, displays: Vec::new(), twin: None })
        }
        FamilyId::Cor24 => {
            let v = take(params, id, &["L", "n", "p", "ptilde", "r"])?;
            let (l, n, p, ptilde, r) = (v[0], v[1], v[2], v[3], v[4]);
            require(ptilde >= 1, || format!("need ptilde >= 1, got {ptilde}"))?;
            require(0 < p && p < 2 * ptilde, || {
                format!("need 0 < p < 2*ptilde, got p={p}, ptilde={ptilde}")
            })?;
            let dparams = thm23_params(l, n, p, 2 * ptilde, r, ptilde)?;
            let single = g_level_display(&dparams)?;
            Ok(Instance { key, dparams, displays: vec![("single sum", single)], twin: None })
        }
        FamilyId::Thm25 => {
            let v = take(params, id, &["L", "n", "nu", "s"])?;
            let (l, n, nu, s) = (v[0], v[1], v[2], v[3]);
            require((2..=16).contains(&n), || format!("need 2 <= n <= 16, got {n}"))?;
            require((1..=1 << 20).contains(&nu), || format!("nu={nu} is beyond the supported range"))?;
            require(0 <= s && s < nu, || format!("need 0 <= s <= nu-1, got s={s}, nu={nu}"))?;
            let half = 1i64 << (n - 1);
            let quarter = 1i64 << (n - 2);
            let nn = l - half * s - quarter;
            let mm = l + half * s + quarter;
            if nn < 0 {
                return Err(Error::NegativeSize(format!(
                    "L={l} too small: N = L - {} < 0",
                    half * s + quarter
                )));
            }
            let q4 = ((1i64 << (2 * n)) - 1) / 3;
            let q6 = ((1i64 << (2 * n - 1)) + 1) / 3;
            let factor = q4 * nu + q6;
            let den = quarter * (2 * nu + 1);
            let alpha = Rational::new(factor * (nu + s + 1), den);
            let beta = Rational::new(factor * (nu - s), den);
            let kg = half * (2 * nu + 1);
            let dparams = DParams::new(2 * kg, kg, nn, mm, alpha, beta)?;
            let single = g_level_display(&dparams)?;
            Ok(Instance { key, dparams, displays: vec![("single sum", single)], twin: None })
        }
        FamilyId::Thm26 => {
            let v = take(params, id, &["L", "n", "t", "p", "pp", "r", "s"])?;
            let (l, n, t, p, pp, r, s) = (v[0], v[1], v[2], v[3], v[4], v[5], v[6]);
            require((0..=8).contains(&t), || format!("need 0 <= t <= 8, got {t}"))?;
            let base = thm23_raw(n, p, pp, r, s)?;
            let pw = 3i64.pow(t as u32);
            let quarter = 1i64 << (n - 2);
            let half = 1i64 << (n - 1);
            let nn = l + pw * quarter + pw * half * (r - s);
            let mm = l - pw * quarter - pw * half * (r - s);
            sized(nn, mm)?;
            let alpha = base.alpha + rat(-(pw - 1) * quarter + (pw - 1) * half * (pp - r));
            let beta = base.beta + rat((pw - 1) * quarter + (pw - 1) * half * r);
            let dparams = DParams::new(pw * base.k, pw * base.i, nn, mm, alpha, beta)?;
            Ok(Instance { key, dparams, displays: Vec::new(), twin: None })
        }
        FamilyId::Thm27 => {
            let v = take(params, id, &["L", "n", "t", "p", "pp", "r", "s"])?;
            let (l, n, t, p, pp, r, s) = (v[0], v[1], v[2], v[3], v[4], v[5], v[6]);
            require((2..=16).contains(&n), || format!("need 2 <= n <= 16, got {n}"))?;
            require((0..=8).contains(&t), || format!("need 0 <= t <= 8, got {t}"))?;
            require(pp <= 1 << 20, || format!("pp={pp} is beyond the supported range"))?;
            require(p >= 1 && pp > p, || format!("need pp > p >= 1, got p={p}, pp={pp}"))?;
            require(0 < r && r < p, || format!("need 0 < r < p, got r={r}"))?;
            require(0 < s && s < pp, || format!("need 0 < s < pp, got s={s}"))?;
            let pw = 3i64.pow(t as u32);
            let two_n = 1i64 << n;
            let quarter = two_n / 4;
            let half = two_n / 2;
            let nn = l + pw * quarter + pw * half * (r - s);
            let mm = l - pw * quarter - pw * half * (r - s);
            sized(nn, mm)?;
            let c_even = (2 * two_n * two_n - 8) / 3;
            let c_odd = (2 * two_n * two_n - 2) / 3;
            let c_sq = (two_n * two_n - 1) / 3;
            let alpha = Rational::new(
                (c_even * pw + 4 * t + 2) * pp - c_sq * pw - (c_odd * pw + 1) * r + p,
                two_n,
            );
            let beta = Rational::new((c_odd * pw + 1) * r + c_sq * pw, two_n);
            let dparams = DParams::new(pw * two_n * pp, pw * two_n * s, nn, mm, alpha, beta)?;
            Ok(Instance { key, dparams, displays: Vec::new(), twin: None })
        }
        FamilyId::ExI => {
            let v = take(params, id, &["N", "a"])?;
            let (n, a) = (v[0], v[1]);
            require(n >= 0, || format!("need N >= 0, got {n}"))?;
            require(a == 0 || a == 1, || format!("need a in {{0,1}}, got {a}"))?;
            let dparams = DParams::new(6, 2, n + a, n, rat(1), Rational::new(1, 2))?;
            let mut display = Polynomial::zero();
            for j in -(n / 2 + 2)..=(n / 2 + 2) {
                let b = qbinom(2 * n + a, n - 2 * j);
                match legendre3(j + 1) {
                    1 => display = &display + &b.shifted(j * j),
                    -1 => display = &display - &b.shifted(j * j),
                    _ => {}
                }
            }
            let twin = Some(dparams.transposed());
            Ok(Instance { key, dparams, displays: vec![("legendre sum", display)], twin })
        }
        FamilyId::ExII => {
            let v = take(params, id, &["N", "a"])?;
            let (n, a) = (v[0], v[1]);
            require(n >= 0, || format!("need N >= 0, got {n}"))?;
            require(a == 0 || a == 1, || format!("need a in {{0,1}}, got {a}"))?;
            let dparams = DParams::new(9, 3, n, n + a, Rational::new(2, 3), Rational::new(1, 3))?;
            let bound = n / 3 + 2;
            let mut plus = Polynomial::zero();
            let mut minus = Polynomial::zero();
            for j in -bound..=bound {
                match legendre3(j + 1) {
                    1 => plus = &plus + &qbinom(2 * n + a, n + 3 * j).shifted(j * j),
                    -1 => plus = &plus - &qbinom(2 * n + a, n + 3 * j).shifted(j * j),
                    _ => {}
                }
                match legendre3(-j + 1) {
                    1 => minus = &minus + &qbinom(2 * n + a, n - 3 * j).shifted(j * j),
                    -1 => minus = &minus - &qbinom(2 * n + a, n - 3 * j).shifted(j * j),
                    _ => {}
                }
            }
            let twin = Some(dparams.transposed());
            Ok(Instance {
                key,
                dparams,
                displays: vec![("legendre sum", plus), ("mirrored legendre sum", minus)],
                twin,
            })
        }
        FamilyId::BorweinA | FamilyId::BorweinB | FamilyId::BorweinC => {
            let v = take(params, id, &["N"])?;
            let n = v[0];
            require(n >= 0, || format!("need N >= 0, got {n}"))?;
            let (nn, mm, alpha, beta) = match id {
                FamilyId::BorweinA => (n, n, Rational::new(4, 3), Rational::new(5, 3)),
                FamilyId::BorweinB => (n + 1, n - 1, Rational::new(2, 3), Rational::new(7, 3)),
                _ => (n + 1, n - 1, Rational::new(1, 3), Rational::new(8, 3)),
            };
            let dparams = DParams::new(6, 3, nn, mm, alpha, beta)?;
            let single = g_level_display(&dparams)?;
            Ok(Instance { key, dparams, displays: vec![("single sum", single)], twin: None })
        }
        FamilyId::F25 => {
            let v = take(params, id, &["L", "nu", "s"])?;
            let (l, nu, s) = (v[0], v[1], v[2]);
            require((1..=1 << 20).contains(&nu), || format!("nu={nu} is beyond the supported range"))?;
            require(0 <= s && s < nu, || format!("need 0 <= s <= nu-1, got s={s}, nu={nu}"))?;
            if l < s {
                return Err(Error::NegativeSize(format!("L={l} too small: N = L - s < 0")));
            }
            let kg = 2 * nu + 1;
            let alpha = Rational::new(2 * (nu + 1) * (nu + s + 1), kg);
            let beta = Rational::new(2 * (nu + 1) * (nu - s), kg);
            let dparams = DParams::new(2 * kg, kg, l - s, l + s + 1, alpha, beta)?;
            // alternating single sum with the shifted quadratic exponent
            let mut display = Polynomial::zero();
            for j in -(l / kg + 2)..=(l / kg + 2) {
                let e = (nu + 1) * kg * j * j + (nu + 1) * (2 * s + 1) * j;
                let b = qbinom(2 * l + 1, l - s - kg * j);
                if b.is_zero() {
                    continue;
                }
                if j.rem_euclid(2) == 0 {
                    display = &display + &b.shifted(e);
                } else {
                    display = &display - &b.shifted(e);
                }
            }
            let single = g_level_display(&dparams)?;
            Ok(Instance {
                key,
                dparams,
                displays: vec![("shifted sum", display), ("single sum", single)],
                twin: None,
            })
        }
    }
}

fn thm23_raw(n: i64, p: i64, pp: i64, r: i64, s: i64) -> Result<DParams, Error> {
    require((2..=16).contains(&n), || format!("need 2 <= n <= 16, got {n}"))?;
    require(pp <= 1 << 20, || format!("pp={pp} is beyond the supported range"))?;
    require(p >= 1 && pp > p, || format!("need pp > p >= 1, got p={p}, pp={pp}"))?;
    require(0 < r && r < p, || format!("need 0 < r < p, got r={r}"))?;
    require(0 < s && s < pp, || format!("need 0 < s < pp, got s={s}"))?;
    let two_n = 1i64 << n;
    let q4 = (two_n * two_n - 1) / 3;
    let q5 = (2 * two_n * two_n + 1) / 3;
    let alpha = Rational::new(q4 * (2 * pp - 1) - q5 * r + p, two_n);
    let beta = Rational::new(q5 * r + q4, two_n);
    // placeholder sizes; callers overwrite N and M
    DParams::new(two_n * pp, two_n * s, 0, 0, alpha, beta)
}

fn thm23_params(l: i64, n: i64, p: i64, pp: i64, r: i64, s: i64) -> Result<DParams, Error> {
    let base = thm23_raw(n, p, pp, r, s)?;
    let quarter = 1i64 << (n - 2);
    let half = 1i64 << (n - 1);
    let nn = l + quarter + half * (r - s);
    let mm = l - quarter - half * (r - s);
    sized(nn, mm)?;
    DParams::new(base.k, base.i, nn, mm, base.alpha, base.beta)
}

/// The explicit two-binomial sum attached to the base family.
fn eq21_display(l: i64, p: i64, pp: i64, r: i64, s: i64) -> Polynomial {
    let mut acc = Polynomial::zero();
    let bound = l / pp + 2;
    for j in -bound..=bound {
        let e1 = j * j * p * pp + (r * pp - s * p) * j;
        let b1 = qbinom(l, (l - r + s).div_euclid(2) - j * pp);
        if !b1.is_zero() {
            acc = &acc + &b1.shifted(e1);
        }
        let e2 = (j * p + r) * (j * pp + s);
        let b2 = qbinom(l, (l - r - s).div_euclid(2) - j * pp);
        if !b2.is_zero() {
            acc = &acc - &b2.shifted(e2);
        }
    }
    acc
}

/// Single alternating sum for a G-shaped tuple (`K = 2i`).
fn g_level_display(p: &DParams) -> Result<Polynomial, Error> {
    if p.k != 2 * p.i {
        return Err(Error::Range(format!("tuple is not G-shaped: K={}, i={}", p.k, p.i)));
    }
    g_sum(p.i, p.n, p.m, p.alpha, p.beta)
}

/// Outcome of a single check.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Verdict {
    pub key: String,
    pub passed: bool,
    pub degree: i64,
    pub offset: i64,
    pub min_coeff: String,
    pub first_negative: Option<(i64, String)>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
    #[serde(skip)]
    pub elapsed_ms: u64,
}

impl Verdict {
    pub fn from_polynomial(
        key: String,
        poly: &Polynomial,
        identities_ok: bool,
        detail: Option<String>,
        elapsed_ms: u64,
    ) -> Verdict {
        let first_negative = poly.first_negative();
        Verdict {
            key,
            passed: identities_ok && first_negative.is_none(),
            degree: poly.degree().unwrap_or(-1),
            offset: poly.offset(),
            min_coeff: poly.min_coeff().to_string(),
            first_negative: first_negative.map(|(e, c)| (e, c.to_string())),
            detail,
            elapsed_ms,
        }
    }
}

/// Instantiate a family member, evaluate it, and check non-negativity
/// together with every attached display identity and symmetry twin.
pub fn check_family(id: FamilyId, params: &ParamMap) -> Result<Verdict, Error> {
    let inst = instantiate(id, params)?;
    let start = Instant::now();
    let value = d_poly(&inst.dparams);
    let mut identities_ok = true;
    let mut notes = Vec::new();
    for (label, display) in &inst.displays {
        if display != &value {
            identities_ok = false;
            notes.push(format!("{label} display disagrees with the double sum"));
        }
    }
    if let Some(twin) = &inst.twin {
        if d_poly(twin) != value {
            identities_ok = false;
            notes.push("transposed tuple disagrees".to_string());
        }
    }
    let detail = if notes.is_empty() { None } else { Some(notes.join("; ")) };
    Ok(Verdict::from_polynomial(
        inst.key,
        &value,
        identities_ok,
        detail,
        start.elapsed().as_millis() as u64,
    ))
}

// --- verdict cache --------------------------------------------------------

/// Cache record layout, one JSON object per line. `offset` is carried in
/// addition to the base fields so cached verdicts can be replayed whole.
#[derive(Serialize, Deserialize)]
struct CacheRecord {
    key: String,
    engine: String,
    passed: bool,
    first_negative: Option<(i64, String)>,
    degree: i64,
    min_coeff: String,
    offset: i64,
    elapsed_ms: u64,
}

/// Append-only JSON Lines cache of sweep verdicts. Records are written
/// whole under a lock, so a record is never partially visible.
pub struct VerdictCache {
    records: HashMap<String, CacheRecord>,
    writer: Mutex<File>,
}

impl VerdictCache {
    pub fn open(dir: &Path) -> Result<Self, Error> {
        std::fs::create_dir_all(dir)?;
        let path = dir.join("verdicts.jsonl");
        let mut records = HashMap::new();
        if path.exists() {
            let reader = BufReader::new(File::open(&path)?);
            for line in reader.lines() {
                let line = line?;
                if let Ok(record) = serde_json::from_str::<CacheRecord>(&line) {
                    if record.engine == ENGINE {
                        records.insert(record.key.clone(), record);
                    }
                }
            }
        }
        let writer = OpenOptions::new().create(true).append(true).open(&path)?;
        Ok(VerdictCache { records, writer: Mutex::new(writer) })
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    fn lookup(&self, key: &str) -> Option<Verdict> {
        self.records.get(key).map(|r| Verdict {
            key: r.key.clone(),
            passed: r.passed,
            degree: r.degree,
            offset: r.offset,
            min_coeff: r.min_coeff.clone(),
            first_negative: r.first_negative.clone(),
            detail: None,
            elapsed_ms: r.elapsed_ms,
        })
    }

    fn record(&self, v: &Verdict) {
        let record = CacheRecord {
            key: v.key.clone(),
            engine: ENGINE.to_string(),
            passed: v.passed,
            first_negative: v.first_negative.clone(),
            degree: v.degree,
            min_coeff: v.min_coeff.clone(),
            offset: v.offset,
            elapsed_ms: v.elapsed_ms,
        };
        let line = serde_json::to_string(&record).expect("cache record serializes");
        let mut writer = self.writer.lock().unwrap();
        let _ = writeln!(writer, "{line}");
    }
}

// --- sweeps ----------------------------------------------------------------

/// Optional restrictions on the swept tuple space.
#[derive(Clone, Debug, Default)]
pub struct SweepFilters {
    pub max_k: Option<i64>,
    pub fixed_k: Option<i64>,
    pub fixed_i: Option<i64>,
    pub max_den: Option<i64>,
}

impl SweepFilters {
    /// Read filters from a generic `key=value` map: `maxK`, `K`, `i`, `maxden`.
    pub fn from_params(map: &ParamMap) -> Result<Self, Error> {
        let mut filters = SweepFilters::default();
        for (key, value) in map {
            match key.as_str() {
                "maxK" => filters.max_k = Some(*value),
                "K" => filters.fixed_k = Some(*value),
                "i" => filters.fixed_i = Some(*value),
                "maxden" => filters.max_den = Some(*value),
                other => {
                    return Err(Error::Range(format!(
                        "unknown sweep filter {other:?} (expected maxK, K, i, maxden)"
                    )))
                }
            }
        }
        Ok(filters)
    }
}

#[derive(Clone, Debug)]
struct SweepTuple {
    regime: RegimeKind,
    k: i64,
    i: i64,
    n: i64,
    m: i64,
    alpha: Rational,
    beta: Rational,
    g_level: bool,
}

impl SweepTuple {
    fn key(&self) -> String {
        if self.g_level {
            format!(
                "{} K={} N={} M={} alpha={} beta={}",
                self.regime.token(),
                self.k,
                self.n,
                self.m,
                self.alpha,
                self.beta
            )
        } else {
            format!(
                "{} K={} i={} N={} M={} alpha={} beta={}",
                self.regime.token(),
                self.k,
                self.i,
                self.n,
                self.m,
                self.alpha,
                self.beta
            )
        }
    }

    fn evaluate(&self) -> Verdict {
        let start = Instant::now();
        let poly = if self.g_level {
            g_sum(self.k, self.n, self.m, self.alpha, self.beta)
        } else {
            d_sum(self.k, self.i, self.n, self.m, self.alpha, self.beta)
        }
        .expect("sweep tuples have integral exponents");
        Verdict::from_polynomial(
            self.key(),
            &poly,
            true,
            None,
            start.elapsed().as_millis() as u64,
        )
    }
}

fn size_splits(max_size: i64) -> impl Iterator<Item = (i64, i64)> {
    (0..=max_size).flat_map(|total| (0..=total).map(move |n| (n, total - n)))
}

fn enumerate_tuples(regime: RegimeKind, max_size: i64, filters: &SweepFilters) -> Vec<SweepTuple> {
    let default_max_k = max_size + 2;
    let max_k = filters.max_k.unwrap_or(default_max_k);
    let k_range = |lo: i64| -> Vec<i64> {
        match filters.fixed_k {
            Some(k) => vec![k],
            None => (lo..=max_k).collect(),
        }
    };
    let mut out = Vec::new();
    match regime {
        RegimeKind::Corollary12 | RegimeKind::Conjecture21 => {
            let integral_only = regime == RegimeKind::Corollary12;
            for k in k_range(2) {
                for i in 1..k {
                    if let Some(fi) = filters.fixed_i {
                        if i != fi {
                            continue;
                        }
                    }
                    // alpha, beta on the grid with alpha*K, alpha*i (etc.)
                    // integral: multiples of 1/gcd(K, i)
                    let den = if integral_only { 1 } else { gcd(k, i) };
                    let strict = regime == RegimeKind::Conjecture21 && k == 4 && i == 2;
                    let lo = if strict { den + 1 } else { den };
                    let hi = if strict { den * (k - 1) - 1 } else { den * (k - 1) };
                    for total in lo..=hi {
                        for a_num in 0..=total {
                            let alpha = Rational::new(a_num, den);
                            let beta = Rational::new(total - a_num, den);
                            if let Some(md) = filters.max_den {
                                if *alpha.denom() > md || *beta.denom() > md {
                                    continue;
                                }
                            }
                            let window_lo = beta - rat(i);
                            let window_hi = rat(k - i) - alpha;
                            for (n, m) in size_splits(max_size) {
                                let diff = rat(n - m);
                                if diff < window_lo || diff > window_hi {
                                    continue;
                                }
                                out.push(SweepTuple {
                                    regime,
                                    k,
                                    i,
                                    n,
                                    m,
                                    alpha,
                                    beta,
                                    g_level: false,
                                });
                            }
                        }
                    }
                }
            }
        }
        RegimeKind::Conjecture13 => {
            for kg in k_range(1) {
                let strict = kg == 2;
                let lo = if strict { kg + 1 } else { kg };
                let hi = if strict { kg * (2 * kg - 1) - 1 } else { kg * (2 * kg - 1) };
                for total in lo..=hi {
                    for a_num in 0..=total {
                        let alpha = Rational::new(a_num, kg);
                        let beta = Rational::new(total - a_num, kg);
                        if let Some(md) = filters.max_den {
                            if *alpha.denom() > md || *beta.denom() > md {
                                continue;
                            }
                        }
                        let window_lo = beta - rat(kg);
                        let window_hi = rat(kg) - alpha;
                        for (n, m) in size_splits(max_size) {
                            let diff = rat(n - m);
                            if diff < window_lo || diff > window_hi {
                                continue;
                            }
                            out.push(SweepTuple {
                                regime,
                                k: kg,
                                i: kg,
                                n,
                                m,
                                alpha,
                                beta,
                                g_level: true,
                            });
                        }
                    }
                }
            }
        }
    }
    out
}

/// Sweep result: verdicts in sorted key order plus the run summary.
pub struct SweepOutcome {
    pub verdicts: Vec<Verdict>,
    pub tuples_checked: u64,
    pub violations: u64,
    pub wall_ms: u128,
}

/// Enumerate every tuple of the regime up to `max_size = N+M`, evaluate
/// the polynomial for each, and record any negative coefficient. The
/// verdict list is sorted by canonical key, so reports are byte-identical
/// across worker counts.
pub fn sweep(
    regime: RegimeKind,
    max_size: i64,
    filters: &SweepFilters,
    jobs: Option<usize>,
    cache: Option<&VerdictCache>,
) -> Result<SweepOutcome, Error> {
    let start = Instant::now();
    let tuples = enumerate_tuples(regime, max_size, filters);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| Error::Range(format!("thread pool: {e}")))?;
    let mut verdicts: Vec<Verdict> = pool.install(|| {
        tuples
            .par_iter()
            .map(|tuple| {
                let key = tuple.key();
                if let Some(cache) = cache {
                    if let Some(hit) = cache.lookup(&key) {
                        return hit;
                    }
                }
                let verdict = tuple.evaluate();
                if let Some(cache) = cache {
                    cache.record(&verdict);
                }
                verdict
            })
            .collect()
    });
    verdicts.sort_by(|a, b| a.key.cmp(&b.key));
    let violations = verdicts.iter().filter(|v| !v.passed).count() as u64;
    Ok(SweepOutcome {
        tuples_checked: verdicts.len() as u64,
        violations,
        verdicts,
        wall_ms: start.elapsed().as_millis(),
    })
}
