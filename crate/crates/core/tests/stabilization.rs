//! Moves that must not change concordance data.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use vconc::arf::{arf, is_regular, quad_form};
use vconc::exact::{int, rat_int};
use vconc::families::kmn_couple;
use vconc::invariants::order;
use vconc::linalg::RatMatrix;
use vconc::seifert::{SeifertCouple, Side};

fn stabilize(rng: &mut ChaCha8Rng, c: &SeifertCouple) -> SeifertCouple {
    let gamma = RatMatrix::from_rows((0..c.dim()).map(|_| vec![rat_int(rng.gen_range(-3..=3))]).collect()).unwrap();
    let side = if rng.gen_bool(0.5) { Side::Plus } else { Side::Minus };
    c.tube_stabilize(side, &gamma, &rat_int(rng.gen_range(-4..=4))).unwrap()
}

#[test]
fn tube_stabilization_keeps_the_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let (m, n, i) = (rng.gen_range(1..=40i64), rng.gen_range(1..=40i64), rng.gen_range(-2..=2i64));
        let c = kmn_couple(&int(m), &int(n), i).unwrap();
        let t = stabilize(&mut rng, &c);
        assert_eq!(t.dim(), c.dim() + 2);
        for side in [Side::Plus, Side::Minus] {
            let before = order(&c.project(side).unwrap()).unwrap();
            let after = order(&t.project(side).unwrap()).unwrap();
            assert_eq!(before, after, "K({m},{n}) shift {i}, {}", side.name());
        }
    }
}

#[test]
fn tube_stabilization_keeps_the_arf_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut seen = 0;
    while seen < 20 {
        let (m, n, i) = (rng.gen_range(1..=20i64), rng.gen_range(1..=20i64), rng.gen_range(-2..=2i64));
        let c = kmn_couple(&int(m), &int(n), i).unwrap();
        let q = quad_form(&c, Side::Plus).unwrap();
        if !is_regular(&q) {
            continue;
        }
        let t = stabilize(&mut rng, &c);
        let qt = quad_form(&t, Side::Plus).unwrap();
        assert!(is_regular(&qt));
        assert_eq!(arf(&q).unwrap(), arf(&qt).unwrap(), "K({m},{n}) shift {i}");
        seen += 1;
    }
}

#[test]
fn stabilized_couples_stay_integral() {
    let c = kmn_couple(&int(3), &int(7), 1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let t = stabilize(&mut rng, &c);
    assert!(t.a_plus().is_integral() && t.a_minus().is_integral());
    assert!(t.is_admissible());
}
