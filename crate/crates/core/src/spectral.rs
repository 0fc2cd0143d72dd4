//! Eigenvalue asymptotics: scale-aware characteristic polynomials, log-spectra,
//! Jordan projections, trace degrees and conjugacy-class scans.

use std::collections::{BTreeSet, HashMap};
use std::io::Write;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::Mat3;
use crate::error::{Error, Result};
use crate::numfmt::sig12;
use crate::triangle_group::{ElementId, Gen, NumericRep, Presentation, SymbolicRep, Word, WordProblem};

/// A real number stored as `mantissa · e^log`, safe far outside the f64 range.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScaledReal {
    pub mantissa: f64,
    pub log: f64,
}

impl ScaledReal {
    pub fn new(mantissa: f64, log: f64) -> Self {
        ScaledReal { mantissa, log }
    }

    pub fn from_f64(x: f64) -> Self {
        ScaledReal::new(x, 0.0)
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa == 0.0
    }

    /// log|x|; −∞ for zero.
    pub fn ln_abs(&self) -> f64 {
        if self.is_zero() {
            f64::NEG_INFINITY
        } else {
            self.log + self.mantissa.abs().ln()
        }
    }

    /// x · e^(−shift) as a plain float.
    pub fn value_shifted(&self, shift: f64) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            self.mantissa * (self.log - shift).exp()
        }
    }

    pub fn value(&self) -> f64 {
        self.value_shifted(0.0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        ScaledReal::new(self.mantissa * other.mantissa, self.log + other.log)
    }

    pub fn div(&self, other: &Self) -> Self {
        ScaledReal::new(self.mantissa / other.mantissa, self.log - other.log)
    }
}

/// Float 3×3 matrix as `e^s · M` with max |M_ij| = 1.
#[derive(Clone, Debug, PartialEq)]
pub struct ScaledMat3 {
    m: Mat3<f64>,
    s: f64,
}

impl ScaledMat3 {
    pub fn identity() -> Self {
        ScaledMat3 {
            m: Mat3::identity(),
            s: 0.0,
        }
    }

    /// Normalizes an arbitrary finite matrix.
    pub fn from_mat3(m: Mat3<f64>) -> Self {
        ScaledMat3 { m, s: 0.0 }.normalized()
    }

    fn normalized(mut self) -> Self {
        let n = self.m.max_abs();
        if n > 0.0 && n.is_finite() {
            self.m = self.m.scale(1.0 / n);
            self.s += n.ln();
        }
        self
    }

    pub fn mantissa(&self) -> &Mat3<f64> {
        &self.m
    }

    pub fn log_scale(&self) -> f64 {
        self.s
    }

    pub fn mul(&self, other: &Self) -> Self {
        ScaledMat3 {
            m: self.m.mul(&other.m),
            s: self.s + other.s,
        }
        .normalized()
    }

    /// Applies a linear map to the mantissa and renormalizes.
    pub fn apply_with(&self, f: impl FnOnce(&Mat3<f64>) -> Mat3<f64>) -> Self {
        ScaledMat3 {
            m: f(&self.m),
            s: self.s,
        }
        .normalized()
    }

    /// The true matrix; overflows for large scales.
    pub fn to_mat3(&self) -> Mat3<f64> {
        self.m.scale(self.s.exp())
    }

    pub fn trace(&self) -> ScaledReal {
        ScaledReal::new(self.m.trace(), self.s)
    }
}

/// λ³ − trace·λ² + second·λ − det.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CharPoly {
    pub trace: ScaledReal,
    pub second: ScaledReal,
    pub det: ScaledReal,
}

pub fn char_poly(m: &ScaledMat3) -> CharPoly {
    CharPoly {
        trace: ScaledReal::new(m.m.trace(), m.s),
        second: ScaledReal::new(m.m.second_invariant(), 2.0 * m.s),
        det: ScaledReal::new(m.m.det(), 3.0 * m.s),
    }
}

/// Log-magnitudes ℓ₁ ≥ ℓ₂ ≥ ℓ₃ of the eigenvalues.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogSpectrum {
    pub l1: f64,
    pub l2: f64,
    pub l3: f64,
    /// All three eigenvalues are real.
    pub real: bool,
    /// Sign of the top eigenvalue when it is real.
    pub top_positive: bool,
    /// Two log-magnitudes within 1e-3 of each other; values are best effort.
    pub clustered: bool,
}

/// Roots of μ³ − Aμ² + Bμ − C for coefficients of size O(1).
fn cubic_roots(a: f64, b: f64, c: f64) -> [Complex64; 3] {
    let p = b - a * a / 3.0;
    let q = -2.0 * a * a * a / 27.0 + a * b / 3.0 - c;
    let shift = a / 3.0;
    let tiny = 1e-14;
    let mut roots: [Complex64; 3] = if p.abs() < tiny && q.abs() < tiny {
        [Complex64::new(shift, 0.0); 3]
    } else {
        let disc = q * q / 4.0 + p * p * p / 27.0;
        if disc < 0.0 {
            let r = (-p / 3.0).sqrt();
            let arg = (-q / (2.0 * r * r * r)).clamp(-1.0, 1.0);
            let theta = arg.acos() / 3.0;
            let tau = 2.0 * std::f64::consts::PI / 3.0;
            [0.0, 1.0, 2.0].map(|k| Complex64::new(2.0 * r * (theta - tau * k).cos() + shift, 0.0))
        } else {
            let sq = disc.sqrt();
            let u = (-q / 2.0 + sq).cbrt();
            let v = (-q / 2.0 - sq).cbrt();
            let mu0 = u + v + shift;
            // (μ − μ0)(μ² + eμ + f)
            let e = mu0 - a;
            let f = b + e * mu0;
            let d = Complex64::new(e * e - 4.0 * f, 0.0).sqrt();
            let r1 = if e >= 0.0 { (-e - d) / 2.0 } else { (-e + d) / 2.0 };
            let r2 = if r1.norm() > 0.0 {
                Complex64::new(f, 0.0) / r1
            } else {
                (-Complex64::new(e, 0.0)) - r1
            };
            [Complex64::new(mu0, 0.0), r1, r2]
        }
    };
    for r in roots.iter_mut() {
        *r = polish(*r, a, b, c);
    }
    roots
}

fn polish(mut z: Complex64, a: f64, b: f64, c: f64) -> Complex64 {
    let eval = |z: Complex64| ((z - a) * z + b) * z - c;
    for _ in 0..2 {
        let val = eval(z);
        let der = (3.0 * z - 2.0 * a) * z + b;
        if der.norm() < 1e-12 {
            break;
        }
        let next = z - val / der;
        if eval(next).norm() < val.norm() {
            z = next;
        } else {
            break;
        }
    }
    z
}

/// log of the largest root modulus of λ³ − aλ² + bλ − c, plus the scaled roots.
fn top_root(a: ScaledReal, b: ScaledReal, c: ScaledReal) -> (f64, [Complex64; 3]) {
    let log_r = [a.ln_abs(), b.ln_abs() / 2.0, c.ln_abs() / 3.0]
        .into_iter()
        .fold(f64::NEG_INFINITY, f64::max);
    if log_r == f64::NEG_INFINITY {
        return (f64::NEG_INFINITY, [Complex64::new(0.0, 0.0); 3]);
    }
    let roots = cubic_roots(
        a.value_shifted(log_r),
        b.value_shifted(2.0 * log_r),
        c.value_shifted(3.0 * log_r),
    );
    let top = roots.iter().map(|z| z.norm()).fold(0.0, f64::max);
    (log_r + top.ln(), roots)
}

impl CharPoly {
    pub fn log_spectrum(&self) -> LogSpectrum {
        let (l1, roots) = top_root(self.trace, self.second, self.det);
        // Reciprocal roots solve μ³ − (second/det)μ² + (trace/det)μ − 1/det.
        let one = ScaledReal::from_f64(1.0);
        let (inv_top, _) = top_root(
            self.second.div(&self.det),
            self.trace.div(&self.det),
            one.div(&self.det),
        );
        let l3 = -inv_top;
        let l3 = l3.min(l1);
        let l2 = (self.det.ln_abs() - l1 - l3).min(l1).max(l3);
        let scale = roots.iter().map(|z| z.norm()).fold(0.0, f64::max).max(1e-300);
        let real = roots.iter().all(|z| z.im.abs() <= 1e-9 * scale);
        let top = roots
            .iter()
            .max_by(|x, y| x.norm().total_cmp(&y.norm()))
            .copied()
            .unwrap_or_default();
        LogSpectrum {
            l1,
            l2,
            l3,
            real,
            top_positive: top.re > 0.0,
            clustered: l1 - l2 < 1e-3 || l2 - l3 < 1e-3,
        }
    }
}

pub fn log_eigenvalues(m: &ScaledMat3) -> LogSpectrum {
    char_poly(m).log_spectrum()
}

/// Characteristic polynomial of ρ(w) built from tr(w) and tr(w⁻¹), which
/// avoids the cancellation in 2×2 minors of a badly scaled product.
pub fn word_char_poly(rep: &NumericRep, w: &Word) -> CharPoly {
    let det = if w.is_even() { 1.0 } else { -1.0 };
    let tr = rep.evaluate(w).trace();
    let tr_inv = rep.evaluate(&w.reversed()).trace();
    CharPoly {
        trace: tr,
        second: ScaledReal::new(det * tr_inv.mantissa, tr_inv.log),
        det: ScaledReal::from_f64(det),
    }
}

/// φ(g) = (log|λ₁|, −log|λ₃|).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JordanPoint {
    pub word: String,
    pub length: usize,
    pub x: f64,
    pub y: f64,
}

pub fn jordan_projection(rep: &NumericRep, w: &Word) -> Result<JordanPoint> {
    if !w.is_even() {
        return Err(Error::OddWord(w.to_string()));
    }
    let (x, y) = if w.is_empty() {
        (0.0, 0.0)
    } else {
        let spec = word_char_poly(rep, w).log_spectrum();
        (spec.l1, -spec.l3)
    };
    Ok(JordanPoint {
        word: w.to_string(),
        length: w.len(),
        x,
        y,
    })
}

/// Top t-degrees of tr ρ_t(w) and tr ρ_t(w⁻¹).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceDegrees {
    pub d1: i32,
    pub d2: i32,
    /// False for odd words, where the degrees are outside the even-word theory.
    pub orientation_preserving: bool,
}

pub fn trace_top_degrees(rep: &SymbolicRep, w: &Word) -> Result<TraceDegrees> {
    let d1 = rep.evaluate(w).trace().top_degree()?;
    let d2 = rep.evaluate(&w.reversed()).trace().top_degree()?;
    Ok(TraceDegrees {
        d1,
        d2,
        orientation_preserving: w.is_even(),
    })
}

/// Conjugacy classes of even elements of length ≤ `max_len`, one geodesic
/// representative each.
///
/// Elements of the ball of radius `max_len + CLASS_MARGIN` are identified
/// exactly (matrices at t = 1) and joined whenever they differ by conjugation
/// with a generator. Each class is represented by the shortlex-least word of
/// minimal length; such words are cyclically reduced. Output is sorted by
/// (length, lexicographic word) and starts with the empty word.
pub fn enumerate_even_classes(pres: &Presentation, max_len: usize) -> Vec<Word> {
    let wp = WordProblem::new(*pres);
    let ball = Ball::new(&wp, max_len + CLASS_MARGIN);
    let n = ball.words.len();
    let mut parent: Vec<usize> = (0..n).collect();
    for i in 0..n {
        for g in Gen::ALL {
            let y = wp.conjugate_by_gen(&ball.ids[i], g);
            if let Some(&j) = ball.index.get(&y) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                // Keep the earliest (shortlex-least) element as root.
                if a < b {
                    parent[b] = a;
                } else if b < a {
                    parent[a] = b;
                }
            }
        }
    }
    let mut reps: BTreeSet<usize> = BTreeSet::new();
    for i in 0..n {
        let len = ball.words[i].len();
        if len <= max_len && len % 2 == 0 {
            reps.insert(find(&mut parent, i));
        }
    }
    // Ball order is shortlex, so index order is (length, lex) order.
    reps.into_iter().map(|i| ball.words[i].clone()).collect()
}

/// Extra radius used when closing classes under conjugation; conjugating paths
/// between minimal-length elements may pass through slightly longer elements.
pub const CLASS_MARGIN: usize = 4;

/// Group elements of length ≤ radius in shortlex order, with their geodesic
/// shortlex words.
struct Ball {
    words: Vec<Word>,
    ids: Vec<ElementId>,
    index: HashMap<ElementId, usize>,
}

impl Ball {
    fn new(wp: &WordProblem, radius: usize) -> Self {
        let mut ball = Ball {
            words: vec![Word::empty()],
            ids: vec![wp.identity()],
            index: HashMap::new(),
        };
        ball.index.insert(wp.identity(), 0);
        let mut layer = 0..1;
        for _ in 0..radius {
            let start = ball.words.len();
            for i in layer.clone() {
                for g in Gen::ALL {
                    if ball.words[i].gens().last() == Some(&g) {
                        continue;
                    }
                    let y = wp.mul_gen(&ball.ids[i], g);
                    if ball.index.contains_key(&y) {
                        continue;
                    }
                    ball.index.insert(y.clone(), ball.words.len());
                    ball.words.push(ball.words[i].concat(&Word::from_gens(vec![g])));
                    ball.ids.push(y);
                }
            }
            layer = start..ball.words.len();
        }
        ball
    }
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut root = x;
    while parent[root] != root {
        root = parent[root];
    }
    let mut y = x;
    while parent[y] != root {
        let next = parent[y];
        parent[y] = root;
        y = next;
    }
    root
}

/// Jordan projections of all class representatives, in (length, lex) order.
pub fn jordan_scan(rep: &NumericRep, max_len: usize) -> Result<Vec<JordanPoint>> {
    let classes = enumerate_even_classes(rep.presentation(), max_len);
    classes.par_iter().map(|w| jordan_projection(rep, w)).collect()
}

/// Distances of φ(g)/log t to the integer lattice.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LatticeStats {
    pub count: usize,
    pub mean: f64,
    /// Nearest-rank 90th percentile.
    pub p90: f64,
}

pub fn lattice_stats(points: &[JordanPoint], log_t: f64) -> Result<LatticeStats> {
    if !(log_t.is_finite() && log_t > 0.0) {
        return Err(Error::InvalidParameter(
            "lattice statistics need t > 1".into(),
        ));
    }
    let mut d: Vec<f64> = points
        .iter()
        .map(|p| {
            let (u, v) = (p.x / log_t, p.y / log_t);
            (u - u.round()).hypot(v - v.round())
        })
        .collect();
    d.sort_by(f64::total_cmp);
    let count = d.len();
    if count == 0 {
        return Ok(LatticeStats {
            count,
            mean: 0.0,
            p90: 0.0,
        });
    }
    let mean = d.iter().sum::<f64>() / count as f64;
    let rank = ((0.9 * count as f64).ceil() as usize).clamp(1, count);
    Ok(LatticeStats {
        count,
        mean,
        p90: d[rank - 1],
    })
}

pub fn write_csv(points: &[JordanPoint], out: &mut impl Write) -> Result<()> {
    writeln!(out, "word,length,x_logl1,y_neg_logl3")?;
    for p in points {
        writeln!(out, "{},{},{},{}", p.word, p.length, sig12(p.x), sig12(p.y))?;
    }
    Ok(())
}

#[derive(Serialize)]
struct JsonRow<'a> {
    word: &'a str,
    length: usize,
    x_logl1: f64,
    y_neg_logl3: f64,
}

pub fn write_json(points: &[JordanPoint], out: &mut impl Write) -> Result<()> {
    let round = |x: f64| sig12(x).parse::<f64>().unwrap_or(x);
    let rows: Vec<JsonRow> = points
        .iter()
        .map(|p| JsonRow {
            word: &p.word,
            length: p.length,
            x_logl1: round(p.x),
            y_neg_logl3: round(p.y),
        })
        .collect();
    serde_json::to_writer_pretty(&mut *out, &rows)?;
    writeln!(out)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triangle_group::Param;

    const W: &str = "cbcacbcacbcacbacbabcabab";

    fn p444() -> Presentation {
        Presentation::new(4, 4, 4).unwrap()
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn char_poly_of_diagonal() {
        let d = ScaledMat3::from_mat3(Mat3([[2.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 0.5]]));
        let cp = char_poly(&d);
        assert!((cp.trace.value() - 3.5).abs() < 1e-12);
        assert!((cp.second.value() - 3.5).abs() < 1e-12);
        assert!((cp.det.value() - 1.0).abs() < 1e-12);
        let id = char_poly(&ScaledMat3::identity());
        assert_eq!((id.trace.value(), id.second.value(), id.det.value()), (3.0, 3.0, 1.0));
    }

    #[test]
    fn log_spectrum_examples() {
        let d = ScaledMat3::from_mat3(Mat3([[4.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 0.25]]));
        let s = log_eigenvalues(&d);
        let l4 = 4f64.ln();
        assert!((s.l1 - l4).abs() < 1e-12 && s.l2.abs() < 1e-12 && (s.l3 + l4).abs() < 1e-12);
        assert!(s.real && s.top_positive && !s.clustered);
        let s = log_eigenvalues(&ScaledMat3::identity());
        assert_eq!((s.l1, s.l2, s.l3), (0.0, 0.0, 0.0));
        assert!(s.clustered);
    }

    #[test]
    fn huge_scale_spectrum() {
        // diag(e^500, 1, e^-500) cannot be formed as a float matrix.
        let cp = CharPoly {
            trace: ScaledReal::new(1.0, 500.0),
            second: ScaledReal::new(1.0, 500.0),
            det: ScaledReal::from_f64(1.0),
        };
        let s = cp.log_spectrum();
        assert!((s.l1 - 500.0).abs() < 1e-9);
        assert!((s.l3 + 500.0).abs() < 1e-9);
        assert!(s.l2.abs() < 1e-6);
    }

    #[test]
    fn elliptic_words_have_unit_spectrum() {
        for t in [1.0, 10.0, 1e3] {
            let rep = NumericRep::new(p444(), Param::T(t)).unwrap();
            let m = rep.evaluate(&w("ab"));
            let s = log_eigenvalues(&m);
            assert!(s.l1.abs() < 1e-9 && s.l3.abs() < 1e-9, "t = {t}: {s:?}");
            let j = jordan_projection(&rep, &w("ab")).unwrap();
            assert!(j.x.abs() < 1e-9 && j.y.abs() < 1e-9);
        }
    }

    #[test]
    fn jordan_projection_examples() {
        let rep = NumericRep::new(p444(), Param::T2(1e12)).unwrap();
        let e = jordan_projection(&rep, &Word::empty()).unwrap();
        assert_eq!((e.x, e.y), (0.0, 0.0));
        assert!(matches!(jordan_projection(&rep, &w("abc")), Err(Error::OddWord(_))));
        let j = jordan_projection(&rep, &w(W)).unwrap();
        // Oracle: log of the leading term c·t^d of the exact trace polynomials.
        let sym = SymbolicRep::new(p444()).unwrap();
        let lead = |word: &Word| {
            let tr = sym.evaluate(word).trace();
            let d = tr.top_degree().unwrap();
            (d, tr.coefficient(d).to_f64().abs().ln() + d as f64 * 1e6f64.ln())
        };
        let (d1, x0) = lead(&w(W));
        let (d2, y0) = lead(&w(W).reversed());
        assert_eq!((d1, d2), (6, 5));
        assert!((j.x - x0).abs() < 1e-3, "{j:?} vs {x0}");
        assert!((j.y - y0).abs() < 1e-3, "{j:?} vs {y0}");
        let r = jordan_projection(&rep, &w(W).reversed()).unwrap();
        assert!((r.x - j.y).abs() < 1e-9 && (r.y - j.x).abs() < 1e-9);
    }

    #[test]
    fn trace_degree_examples() {
        let rep = SymbolicRep::new(p444()).unwrap();
        let d = trace_top_degrees(&rep, &w(W)).unwrap();
        assert_eq!((d.d1, d.d2), (6, 5));
        let d = trace_top_degrees(&rep, &w("ab")).unwrap();
        assert_eq!((d.d1, d.d2), (0, 0));
        let e = rep.evaluate(&Word::empty()).trace();
        assert_eq!(e.top_degree().unwrap(), 0);
        assert_eq!(trace_top_degrees(&rep, &Word::empty()).unwrap().d1, 0);
        assert!(!trace_top_degrees(&rep, &w("abc")).unwrap().orientation_preserving);
    }

    #[test]
    fn class_enumeration_small() {
        let c0 = enumerate_even_classes(&p444(), 0);
        assert_eq!(c0, vec![Word::empty()]);
        let c2: Vec<String> = enumerate_even_classes(&p444(), 2)
            .iter()
            .map(|w| w.to_string())
            .collect();
        assert_eq!(c2, vec!["", "ab", "ac", "bc"]);
    }

    #[test]
    fn lattice_stats_nearest_rank() {
        let pts: Vec<JordanPoint> = (0..10)
            .map(|k| JordanPoint {
                word: String::new(),
                length: 0,
                x: k as f64 * 0.01,
                y: 0.0,
            })
            .collect();
        let s = lattice_stats(&pts, 1.0).unwrap();
        assert_eq!(s.count, 10);
        assert!((s.p90 - 0.08).abs() < 1e-12);
        assert!((s.mean - 0.045).abs() < 1e-12);
        assert!(lattice_stats(&pts, 0.0).is_err());
    }

    #[test]
    fn csv_layout() {
        let pts = vec![JordanPoint {
            word: "ab".into(),
            length: 2,
            x: 1.0 / 3.0,
            y: 0.0,
        }];
        let mut buf = Vec::new();
        write_csv(&pts, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "word,length,x_logl1,y_neg_logl3\nab,2,0.333333333333,0\n"
        );
    }
}
