//! Real-root isolation by Sturm sequences and the partition of the unit circle
//! cut out by the unit-circle roots of a polynomial.

use num_traits::{One, Signed, Zero};

use super::{factor_q, RatPoly};
use crate::error::{Error, Result};
use crate::exact::{Int, Rat};

/// An open interval (lo, hi) with rational ends that are not roots and exactly
/// one root strictly inside. Degenerate intervals lo == hi denote an exact root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: Rat,
    pub hi: Rat,
}

impl RootInterval {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn midpoint_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        ((&self.lo + &self.hi) / Rat::from_integer(Int::from(2)))
            .to_f64()
            .unwrap_or(f64::NAN)
    }

    /// Halves the interval (approximately) keeping the root inside.
    pub fn refine(&mut self, f: &RatPoly) {
        if self.is_exact() {
            return;
        }
        let mid = split_point(f, &self.lo, &self.hi);
        let s_lo = f.eval(&self.lo).is_positive();
        let s_mid = f.eval(&mid).is_positive();
        if s_lo == s_mid {
            self.lo = mid;
        } else {
            self.hi = mid;
        }
    }
}

/// A point in (a, b) near the midpoint that is not a root of f.
fn split_point(f: &RatPoly, a: &Rat, b: &Rat) -> Rat {
    let two = Rat::from_integer(Int::from(2));
    let mid = (a + b) / &two;
    if !f.eval(&mid).is_zero() {
        return mid;
    }
    let mut step = (b - a) / Rat::from_integer(Int::from(8));
    loop {
        let cand = &mid + &step;
        if !f.eval(&cand).is_zero() {
            return cand;
        }
        step /= &two;
    }
}

fn sturm_chain(f: &RatPoly) -> Vec<RatPoly> {
    let mut chain = vec![f.clone(), f.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            break;
        }
        let r = chain[n - 2].rem(&chain[n - 1]);
        if r.is_zero() {
            break;
        }
        chain.push(-&r);
    }
    chain
}

fn sign_changes(chain: &[RatPoly], x: &Rat) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for p in chain {
        let v = p.eval(x);
        let s = if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        };
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// Disjoint isolating intervals for the real roots of a squarefree polynomial, ascending.
pub fn sturm_isolate(f: &RatPoly) -> Result<Vec<RootInterval>> {
    let deg = f
        .degree()
        .ok_or_else(|| Error::invalid("cannot isolate roots of the zero polynomial"))?;
    if deg == 0 {
        return Ok(Vec::new());
    }
    if f.gcd(&f.derivative()).degree() != Some(0) {
        return Err(Error::invalid(format!("{f} is not squarefree")));
    }
    let chain = sturm_chain(f);
    let b = f.cauchy_bound();
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        let n = sign_changes(&chain, &lo) - sign_changes(&chain, &hi);
        match n {
            0 => {}
            1 => out.push(RootInterval { lo, hi }),
            _ => {
                let mid = split_point(f, &lo, &hi);
                stack.push((mid.clone(), hi));
                stack.push((lo, mid));
            }
        }
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    Ok(out)
}

/// A rational point of the unit circle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CirclePoint {
    pub x: Rat,
    pub y: Rat,
}

impl CirclePoint {
    /// The point ((1 - s^2)/(1 + s^2), 2s/(1 + s^2)).
    pub fn from_half_angle(s: &Rat) -> CirclePoint {
        let s2 = s * s;
        let den = Rat::one() + &s2;
        CirclePoint {
            x: (Rat::one() - &s2) / &den,
            y: (s * Rat::from_integer(Int::from(2))) / den,
        }
    }

    pub fn minus_one() -> CirclePoint {
        CirclePoint {
            x: -Rat::one(),
            y: Rat::zero(),
        }
    }

    pub fn conj(&self) -> CirclePoint {
        CirclePoint {
            x: self.x.clone(),
            y: -&self.y,
        }
    }

    pub fn on_circle(&self) -> bool {
        &self.x * &self.x + &self.y * &self.y == Rat::one()
    }

    pub fn angle_deg(&self) -> f64 {
        use num_traits::ToPrimitive;
        let x = self.x.to_f64().unwrap_or(f64::NAN);
        let y = self.y.to_f64().unwrap_or(f64::NAN);
        let a = y.atan2(x).to_degrees();
        if a < 0.0 {
            a + 360.0
        } else {
            a
        }
    }
}

/// A conjugate pair of unit-circle roots e^{±iθ}, 0 < θ ≤ π, located through
/// u = 2cos θ. For θ = π (the root -1) the interval is exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircleRoot {
    /// Irreducible factor of the input vanishing at the pair.
    pub factor: RatPoly,
    /// Trace polynomial of the factor; `None` for t + 1.
    pub trace: Option<RatPoly>,
    pub u: RootInterval,
}

impl CircleRoot {
    /// Approximate angle θ in degrees (for display only).
    pub fn angle_deg(&self) -> f64 {
        let mut iv = self.u.clone();
        if let Some(t) = &self.trace {
            let eps = Rat::new(Int::one(), Int::one() << 50);
            while &iv.hi - &iv.lo > eps {
                iv.refine(t);
            }
        }
        (iv.midpoint_f64() / 2.0).clamp(-1.0, 1.0).acos().to_degrees()
    }
}

/// Arc endpoint: the point 1, or root `index` of [`CircleArcs::roots`]
/// (its conjugate when `conjugate` is set).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArcEnd {
    One,
    Root { index: usize, conjugate: bool },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircleArc {
    pub start: ArcEnd,
    pub end: ArcEnd,
    pub sample: CirclePoint,
}

/// Open arcs of S^1 minus {1} minus the unit-circle roots, counterclockwise from 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircleArcs {
    /// Roots in the closed upper half circle, by increasing angle.
    pub roots: Vec<CircleRoot>,
    pub arcs: Vec<CircleArc>,
}

impl CircleArcs {
    pub fn end_angle_deg(&self, end: ArcEnd, at_start: bool) -> f64 {
        match end {
            ArcEnd::One => {
                if at_start {
                    0.0
                } else {
                    360.0
                }
            }
            ArcEnd::Root { index, conjugate } => {
                let a = self.roots[index].angle_deg();
                if conjugate {
                    360.0 - a
                } else {
                    a
                }
            }
        }
    }
}

fn rat(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

/// Smallest-denominator s > 0 with the half-angle point's x strictly inside (xa, xb).
/// `xa = None` means the interval reaches -1 (s unbounded above).
fn half_angle_sample(xa: Option<&Rat>, xb: &Rat) -> Rat {
    let one = Rat::one();
    let lower = (&one - xb) / (&one + xb);
    let upper = xa.map(|a| (&one - a) / (&one + a));
    let mut q = Int::one();
    loop {
        let q2 = Rat::from_integer(&q * &q);
        let target = &lower * &q2;
        let mut r = target.floor().to_integer().max(Int::zero()).sqrt();
        while Rat::from_integer(&r * &r) <= target {
            r += 1u32;
        }
        let ok = match &upper {
            None => true,
            Some(u) => Rat::from_integer(&r * &r) < u * &q2,
        };
        if ok {
            return Rat::new(r, q);
        }
        q += 1u32;
    }
}

/// Partition of S^1 by the unit-circle roots of f, with one rational sample per arc.
pub fn circle_arcs(f: &RatPoly) -> Result<CircleArcs> {
    if f.is_zero() {
        return Err(Error::invalid("circle arcs of the zero polynomial"));
    }
    let fac = factor_q(f)?;
    let t_minus_1 = RatPoly::from_ints(&[-1, 1]);
    let t_plus_1 = RatPoly::from_ints(&[1, 1]);
    let mut roots: Vec<CircleRoot> = Vec::new();
    let (two, m_two) = (rat(2), rat(-2));
    for (g, _) in &fac.factors {
        if *g == t_minus_1 {
            continue;
        }
        if *g == t_plus_1 {
            roots.push(CircleRoot {
                factor: g.clone(),
                trace: None,
                u: RootInterval {
                    lo: m_two.clone(),
                    hi: m_two.clone(),
                },
            });
            continue;
        }
        // Unit-circle roots of an irreducible come in pairs w, 1/w, so only
        // palindromic factors can have them.
        let Some(tp) = g.trace_poly() else { continue };
        for mut iv in sturm_isolate(&tp)? {
            while (iv.lo < two && two < iv.hi) || (iv.lo < m_two && m_two < iv.hi) || iv.hi == two || iv.lo == m_two {
                iv.refine(&tp);
            }
            if iv.lo >= m_two && iv.hi <= two {
                roots.push(CircleRoot {
                    factor: g.clone(),
                    trace: Some(tp.clone()),
                    u: iv,
                });
            }
        }
    }
    // Separate the intervals strictly, then order by decreasing u (increasing angle).
    loop {
        roots.sort_by(|a, b| b.u.lo.cmp(&a.u.lo));
        let mut clean = true;
        for i in 1..roots.len() {
            if roots[i].u.hi >= roots[i - 1].u.lo {
                clean = false;
                let (left, right) = roots.split_at_mut(i);
                let a = &mut left[i - 1];
                let b = &mut right[0];
                if let Some(t) = a.trace.clone() {
                    a.u.refine(&t);
                }
                if let Some(t) = b.trace.clone() {
                    b.u.refine(&t);
                }
            }
        }
        if clean {
            break;
        }
    }

    let mut arcs = Vec::new();
    let half = |r: &Rat| r / &two;
    let root_end = |i: usize, c: bool| ArcEnd::Root {
        index: i,
        conjugate: c,
    };
    if roots.is_empty() {
        arcs.push(CircleArc {
            start: ArcEnd::One,
            end: ArcEnd::One,
            sample: CirclePoint::minus_one(),
        });
        return Ok(CircleArcs { roots, arcs });
    }
    let k = roots.len();
    let minus_one_root = roots[k - 1].u.is_exact();
    // upper half
    let mut upper = Vec::new();
    for i in 0..k {
        let x_lo = (!roots[i].u.is_exact()).then(|| half(&roots[i].u.hi));
        let x_hi = if i == 0 { Rat::one() } else { half(&roots[i - 1].u.lo) };
        let s = half_angle_sample(x_lo.as_ref(), &x_hi);
        let start = if i == 0 { ArcEnd::One } else { root_end(i - 1, false) };
        upper.push(CircleArc {
            start,
            end: root_end(i, false),
            sample: CirclePoint::from_half_angle(&s),
        });
    }
    arcs.extend(upper.iter().cloned());
    if !minus_one_root {
        arcs.push(CircleArc {
            start: root_end(k - 1, false),
            end: root_end(k - 1, true),
            sample: CirclePoint::minus_one(),
        });
    }
    // lower half mirrors the upper arcs in reverse
    for arc in upper.iter().rev() {
        let mirror = |e: ArcEnd| match e {
            ArcEnd::One => ArcEnd::One,
            ArcEnd::Root { index, .. } => {
                if roots[index].u.is_exact() {
                    root_end(index, false)
                } else {
                    root_end(index, true)
                }
            }
        };
        arcs.push(CircleArc {
            start: mirror(arc.end),
            end: mirror(arc.start),
            sample: arc.sample.conj(),
        });
    }
    Ok(CircleArcs { roots, arcs })
}
