//! Acceptance suite: one line per criterion with its timing and limit.
//!
//! Runs without the libtest harness so the report is always printed.
//! Exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use vconc::arf::{arf, arf_majority, arf_symplectic, is_regular, quad_form, F2QuadForm};
use vconc::exact::{hilbert_symbol, int, is_prime, rat_int, Place, Rat};
use vconc::families::{fixture, kmn_couple, lemma_order2_criteria, Order2Certificate};
use vconc::invariants::{alexander, concordant, is_metabolic, mu_symbol, order, AlexanderSide, Order};
use vconc::isometric::{from_directed, primary_decompose, to_directed, SymmetryClass};
use vconc::linalg::{char_poly, congruent_diagonalize, RatMatrix};
use vconc::poly::RatPoly;
use vconc::seifert::{h_sum, validate_couple, DirectedMatrix, Ring, SeifertCouple, Side};
use vconc::witt::{boundary_p, is_trivial_wittq, witt_class, WittClassQ};

type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn project(c: &SeifertCouple, side: Side) -> Result<DirectedMatrix, String> {
    ok(c.project(side))
}

fn kmn(m: i64, n: i64, i: i64) -> Result<SeifertCouple, String> {
    ok(kmn_couple(&int(m), &int(n), i))
}

fn order_of(c: &SeifertCouple, side: Side) -> Result<Order, String> {
    ok(order(&project(c, side)?))
}

/// Same dimension and same Witt class, i.e. congruent over Q.
fn congruent_q(b: &RatMatrix, diag: &[Rat]) -> Result<bool, String> {
    if b.rows() != diag.len() {
        return Ok(false);
    }
    let w = ok(witt_class(b))?;
    let v = ok(WittClassQ::from_diagonal(diag))?;
    ok(is_trivial_wittq(&w.add(&v.negate())))
}

fn criterion_1() -> Check {
    let c = ok(fixture("6.85091"))?;
    let plus = project(&c, Side::Plus)?;
    let minus = project(&c, Side::Minus)?;
    let st = ok(from_directed(&plus))?;
    let delta = ok(st.char_poly())?;
    let expected = &(&RatPoly::from_ints(&[-1, 1]) * &RatPoly::from_ints(&[-1, 1])) * &RatPoly::from_ints(&[1, 3, 1]);
    ensure!(delta == expected, "Delta_S = {delta}");
    let pieces = ok(primary_decompose(&st))?;
    ensure!(pieces.len() == 2, "{} primary pieces", pieces.len());
    let t1 = pieces.iter().find(|p| p.class == SymmetryClass::TMinusOne).ok_or("no t - 1 piece")?;
    let quad = pieces.iter().find(|p| p.factor == RatPoly::from_ints(&[1, 3, 1])).ok_or("no t^2 + 3t + 1 piece")?;
    ensure!(congruent_q(&t1.b, &[rat_int(-2), rat_int(10)])?, "t - 1 piece is not <-2, 10>");
    let (d, _) = ok(congruent_diagonalize(&RatMatrix::from_i64(&[&[2, 5], &[5, 10]])))?;
    ensure!(congruent_q(&quad.b, &d)?, "quadratic piece is not [[2,5],[5,10]]");
    let w = ok(WittClassQ::from_diagonal(&[rat_int(-2), rat_int(10)]))?;
    let b5 = ok(boundary_p(&w, &int(5)))?;
    ensure!(b5.rank_mod_2 == 1 && !b5.disc_square, "boundary at 5 is {b5}");
    ensure!(ok(order(&plus))? == Order::Two, "order(A+) != 2");
    ensure!(ok(order(&minus))? == Order::One, "order(A-) != 1");
    ensure!(!ok(concordant(&plus, &minus))?, "A+ and A- reported concordant");
    Ok(())
}

fn criterion_2(m: i64, n: i64, expected: Order) -> Check {
    let c = kmn(m, n, 0)?;
    for side in [Side::Plus, Side::Minus] {
        let o = order_of(&c, side)?;
        ensure!(o == expected, "K({m},{n}) {}: order {o}, expected {expected}", side.name());
    }
    Ok(())
}

fn criterion_3() -> Check {
    let (m, n) = (1447, 11);
    ensure!(order_of(&kmn(m, n, 1)?, Side::Plus)? == Order::One, "order(A_1^+) != 1");
    ensure!(order_of(&kmn(m, n, -1)?, Side::Plus)? == Order::Two, "order(A_-1^+) != 2");
    let cert = ok(lemma_order2_criteria(&int(m), &int(n), &int(19)))?;
    ensure!(cert == Order2Certificate::CertifiedOrder2, "criteria at 19: {cert:?}");
    let c0 = kmn(m, n, 0)?;
    for side in [Side::Plus, Side::Minus] {
        ensure!(order_of(&c0, side)? == Order::Four, "order(A_0^{}) != 4", side.name());
    }
    Ok(())
}

fn criterion_4() -> Check {
    let a = ok(DirectedMatrix::from_i64(&[&[1, 0], &[0, 1]]))?;
    let prof = ok(vconc::invariants::signature_profile(&a))?;
    ensure!(!prof.is_zero(), "arc profile is zero");
    ensure!(ok(order(&a))? == Order::Infinite, "order is finite");
    Ok(())
}

fn criterion_5(m: i64) -> Check {
    let c = kmn(m, m, 0)?;
    for side in [Side::Plus, Side::Minus] {
        ensure!(ok(is_metabolic(&project(&c, side)?))?, "F_0({m},{m}) {} not metabolic", side.name());
    }
    Ok(())
}

fn criterion_6() -> Check {
    let c = ok(fixture("5.2433"))?;
    let q = ok(quad_form(&c, Side::Plus))?;
    let expected = vec![vec![0, 0, 1, 0], vec![0, 0, 1, 1], vec![1, 1, 0, 0], vec![0, 1, 0, 0]];
    ensure!(q.polarization_matrix() == expected, "polarization {:?}", q.polarization_matrix());
    ensure!(ok(arf(&q))? == 1, "Arf != 1");
    Ok(())
}

fn criterion_7() -> Check {
    let x = project(&kmn(3, 11, 0)?, Side::Plus)?;
    let y = project(&kmn(7, 11, 0)?, Side::Plus)?;
    ensure!(!ok(concordant(&x, &y))?, "reported concordant");
    // S is unipotent on both, so the whole form is the t - 1 piece
    let diff = x.block_sum(&y.negate());
    let w = ok(witt_class(&diff.symmetrization()))?;
    for p in [3, 7] {
        let b = ok(boundary_p(&w, &int(p)))?;
        ensure!(b.rank_mod_2 == 1, "boundary at {p} has even rank");
    }
    Ok(())
}

/// The closed-form characteristic polynomials, x = mn.
fn closed_form(x: i64) -> [RatPoly; 4] {
    let x = rat_int(x);
    let one = rat_int(1);
    let s0p = RatPoly::from_ints(&[1, -2, 1]);
    let s0m = RatPoly::new(vec![one.clone(), rat_int(2) * (&one + &x) / (&one - &x), one.clone()]);
    let s1p = RatPoly::new(vec![one.clone(), Rat::zero(), -(rat_int(2) + &one / &x), Rat::zero(), one.clone()]);
    let t2m1 = RatPoly::from_ints(&[-1, 0, 1]);
    let q = RatPoly::from_ints(&[1, 1, 1]);
    let s1m = (&(&t2m1 * &t2m1).scale(&x) - &(&q * &q)).scale(&(one / (x - rat_int(1))));
    [s0p, s0m, s1p, s1m]
}

fn delta(c: &SeifertCouple, side: Side) -> Result<RatPoly, String> {
    let st = ok(from_directed(&project(c, side)?))?;
    ok(char_poly(st.isometry()))
}

fn criterion_8(rng: &mut ChaCha8Rng) -> Check {
    let mut done = 0;
    while done < 20 {
        let (m, n) = (rng.gen_range(1..=30i64), rng.gen_range(1..=30i64));
        if m * n == 1 {
            continue;
        }
        let [s0p, s0m, s1p, s1m] = closed_form(m * n);
        let (c0, cm1, c1) = (kmn(m, n, 0)?, kmn(m, n, -1)?, kmn(m, n, 1)?);
        ensure!(delta(&c0, Side::Plus)? == s0p, "Delta S_0^+ for ({m},{n})");
        ensure!(delta(&c0, Side::Minus)? == s0m, "Delta S_0^- for ({m},{n})");
        ensure!(delta(&cm1, Side::Plus)? == s1p, "Delta S_-1^+ for ({m},{n})");
        ensure!(delta(&c1, Side::Minus)? == s1m, "Delta S_1^- for ({m},{n})");
        done += 1;
    }
    Ok(())
}

fn random_matrix(rng: &mut ChaCha8Rng, n: usize, r: i64) -> RatMatrix {
    let rows = (0..n).map(|_| (0..n).map(|_| rat_int(rng.gen_range(-r..=r))).collect()).collect();
    RatMatrix::from_rows(rows).expect("square")
}

fn random_directed(rng: &mut ChaCha8Rng, max_dim: usize, nonsingular: bool) -> DirectedMatrix {
    loop {
        let n = 2 * rng.gen_range(1..=max_dim / 2);
        let m = random_matrix(rng, n, 3);
        if nonsingular && m.det().map_or(true, |d| d.is_zero()) {
            continue;
        }
        if let Ok(a) = DirectedMatrix::new(m) {
            return a;
        }
    }
}

/// Brute-force Hilbert symbol for odd p: solve z^2 = a x^2 + b y^2 primitively mod p^k.
fn brute_hilbert(a: i64, b: i64, p: i64) -> i32 {
    let v = |mut x: i64| {
        let mut k = 0;
        while x % p == 0 {
            x /= p;
            k += 1;
        }
        k
    };
    let m = p.pow(v(a) + v(b) + 1);
    let mut square = vec![false; m as usize];
    let mut unit_square = vec![false; m as usize];
    for z in 0..m {
        let s = (z * z % m) as usize;
        square[s] = true;
        if z % p != 0 {
            unit_square[s] = true;
        }
    }
    for x in 0..m {
        for y in 0..m {
            let lhs = (a * (x * x % m) + b * (y * y % m)).rem_euclid(m) as usize;
            let primitive_xy = x % p != 0 || y % p != 0;
            if (primitive_xy && square[lhs]) || unit_square[lhs] {
                return 1;
            }
        }
    }
    -1
}

fn criterion_9(rng: &mut ChaCha8Rng) -> Check {
    // round trip through the isometric structure
    for k in 0..200 {
        let a = random_directed(rng, 6, true);
        let back = ok(to_directed(&ok(from_directed(&a))?))?;
        ensure!(back == a, "round trip {k} changed the matrix");
    }
    // Alexander polynomial = det(A) * Delta_S on both sides
    let mut done = 0;
    while done < 100 {
        let a = random_directed(rng, 4, true);
        let n = a.dim();
        let minus = ok(a.matrix().checked_add(&h_sum(n / 2)))?;
        let Ok(c) = validate_couple(a.matrix().clone(), minus, Ring::Z) else { continue };
        let Ok(am) = c.project(Side::Minus) else { continue };
        if ok(am.matrix().det())?.is_zero() {
            continue;
        }
        for (side, x) in [(AlexanderSide::Plus, &a), (AlexanderSide::Minus, &am)] {
            let lhs = ok(alexander(&c, side))?;
            let rhs = ok(ok(from_directed(x))?.char_poly())?.scale(&ok(x.matrix().det())?);
            ensure!(lhs == rhs, "determinant identity fails on {:?}", x.matrix().to_strings());
        }
        done += 1;
    }
    // mu rule on pairs of equal discriminant
    let primes: Vec<i64> = (2..=50).filter(|&q| is_prime(&int(q))).collect();
    for _ in 0..60 {
        let nz = |rng: &mut ChaCha8Rng| loop {
            let v = rng.gen_range(-30i64..=30);
            if v != 0 {
                return v;
            }
        };
        let r = 2 * rng.gen_range(1..=2usize);
        let b1: Vec<Rat> = (0..r).map(|_| rat_int(nz(rng))).collect();
        let mut b2: Vec<Rat> = (0..r - 1).map(|_| rat_int(nz(rng))).collect();
        let s = rat_int(nz(rng));
        let last = b1.iter().product::<Rat>() / b2.iter().product::<Rat>() * &s * &s;
        b2.push(last);
        let mut sum = b1.clone();
        sum.extend(b2.iter().map(|x| -x));
        for &q in &primes {
            let pl = Place::prime(q);
            let prod = ok(mu_symbol(&sum, &pl))? * ok(mu_symbol(&b1, &pl))? * ok(mu_symbol(&b2, &pl))?;
            ensure!(prod == 1, "mu rule fails at {q}");
        }
    }
    // Hilbert symbols against brute force at odd p <= 23
    for p in [3i64, 5, 7, 11, 13, 17, 19, 23] {
        let vals = [1, -1, 2, -2, 3, 5, -7, 10, 21, p, -p, 2 * p, 3 * p];
        for &a in &vals {
            for &b in &vals {
                if a.rem_euclid(p) == 0 && b.rem_euclid(p) == 0 {
                    continue;
                }
                let fast = ok(hilbert_symbol(&rat_int(a), &rat_int(b), &Place::prime(p)))?;
                ensure!(fast == brute_hilbert(a, b, p), "({a},{b})_{p}");
            }
        }
    }
    // X + (-X) has order 1
    for _ in 0..20 {
        let x = random_directed(rng, 4, false);
        ensure!(ok(order(&x.block_sum(&x.negate())))? == Order::One, "X + -X not trivial");
    }
    // tube stabilization preserves the order on shifted K(m, n)
    for _ in 0..20 {
        let (m, n, i) = (rng.gen_range(1..=30i64), rng.gen_range(1..=30i64), rng.gen_range(-1..=1i64));
        let c = kmn(m, n, i)?;
        let gamma = RatMatrix::from_rows((0..c.dim()).map(|_| vec![rat_int(rng.gen_range(-2..=2))]).collect()).expect("column");
        let side = if rng.gen_bool(0.5) { Side::Plus } else { Side::Minus };
        let t = ok(c.tube_stabilize(side, &gamma, &rat_int(rng.gen_range(-3..=3))))?;
        for s in [Side::Plus, Side::Minus] {
            ensure!(order_of(&c, s)? == order_of(&t, s)?, "tube stabilization of K({m},{n}) shift {i} changed the order");
        }
    }
    // Arf by majority count and by symplectic basis
    let mut done = 0;
    while done < 100 {
        let n = 2 * rng.gen_range(1..=6usize);
        let q = ok(F2QuadForm::from_matrix(&random_matrix(rng, n, 1)))?;
        if !is_regular(&q) {
            continue;
        }
        ensure!(ok(arf_majority(&q))? == ok(arf_symplectic(&q))?, "Arf methods disagree in dimension {n}");
        done += 1;
    }
    Ok(())
}

struct Outcome {
    failed: usize,
}

impl Outcome {
    fn run(&mut self, label: &str, limit: Option<Duration>, f: impl FnOnce() -> Check) {
        let start = Instant::now();
        let result = f();
        let elapsed = start.elapsed();
        let slow = limit.is_some_and(|l| elapsed > l);
        let limit_text = limit.map_or("no limit".to_string(), |l| format!("limit {:.0} s", l.as_secs_f64()));
        let status = match (&result, slow) {
            (Ok(()), false) => "PASS",
            _ => "FAIL",
        };
        if status == "FAIL" {
            self.failed += 1;
        }
        print!("{status} {label} ({:.3} s, {limit_text})", elapsed.as_secs_f64());
        match result {
            Err(e) => println!(": {e}"),
            Ok(()) if slow => println!(": too slow"),
            Ok(()) => println!(),
        }
    }
}

fn main() -> ExitCode {
    let sec = Duration::from_secs;
    let mut out = Outcome { failed: 0 };
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    out.run("1 6.85091 invariants", Some(sec(1)), criterion_1);
    for (m, n, o) in [
        (3, 3, Order::One),
        (5, 5, Order::One),
        (7, 7, Order::One),
        (5, 13, Order::Two),
        (13, 17, Order::Two),
        (3, 7, Order::Four),
        (3, 11, Order::Four),
        (7, 11, Order::Four),
    ] {
        out.run(&format!("2 K({m},{n}) base order {o}"), Some(sec(1)), || criterion_2(m, n, o));
    }
    out.run("3 K(1447,11) orbit orders 1, 2, 4", Some(sec(5)), criterion_3);
    out.run("4 diag(1,1) has infinite order", Some(sec(1)), criterion_4);
    for m in 1..=5 {
        out.run(&format!("5 F_0({m},{m}) metabolic"), Some(sec(1)), || criterion_5(m));
    }
    out.run("6 Arf of 5.2433", Some(sec(1)), criterion_6);
    out.run("7 K(3,11) and K(7,11) not concordant", Some(sec(1)), criterion_7);
    out.run("8 closed-form characteristic polynomials, 20 pairs", None, || criterion_8(&mut rng));
    out.run("9 property suites", Some(sec(60)), || criterion_9(&mut rng));
    println!("{} criteria failed", out.failed);
    if out.failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
