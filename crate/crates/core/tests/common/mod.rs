#![allow(dead_code)]

use fano3_core::orbifold::Basket;
use fano3_core::Rational;
use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Q = Ratio<i128>;

pub fn q(n: i128) -> Q {
    Q::from_integer(n)
}

pub fn to_big(x: &Q) -> Rational {
    Rational::new((*x.numer()).into(), (*x.denom()).into())
}

fn inverse_by_search(x: i128, r: i128) -> i128 {
    (1..r).find(|y| (x * y).rem_euclid(r) == 1).expect("unit")
}

/// Local contribution of a germ [r,a] at index f, straight from the
/// plurigenus formula with the residue multiplier f·a⁻¹.
pub fn c_p(r: i128, a: i128, f: i128, n: i128) -> Q {
    let beta = (f * inverse_by_search(a, r)).rem_euclid(r);
    let i = (-n * inverse_by_search(f, r)).rem_euclid(r);
    let mut sum = Q::new(-i * (r * r - 1), 12 * r);
    for j in 1..i {
        let m = (beta * j).rem_euclid(r);
        sum += Q::new(m * (r - m), 2 * r);
    }
    sum
}

pub struct Oracle {
    pub f: i128,
    pub germs: Vec<(i128, i128)>,
    pub ac2: Q,
    pub a3: Q,
}

impl Oracle {
    pub fn new(basket: &Basket) -> Self {
        let f = i128::from(basket.f());
        let germs: Vec<(i128, i128)> = basket
            .pairs()
            .into_iter()
            .map(|(r, a)| (i128::from(r), i128::from(a)))
            .collect();
        let mut ac2 = q(24);
        for &(r, _) in &germs {
            ac2 -= Q::new(r * r - 1, r);
        }
        ac2 /= q(f);
        let local: Q = germs.iter().map(|&(r, a)| c_p(r, a, f, -1)).sum();
        let a3 = q(12) * (q(1) - ac2 / q(12) + local) / q((f - 1) * (f - 2));
        Oracle { f, germs, ac2, a3 }
    }

    pub fn local(&self, n: i128) -> Q {
        self.germs.iter().map(|&(r, a)| c_p(r, a, self.f, n)).sum()
    }

    /// Plurigenus formula, valid for n > -f.
    pub fn p_n(&self, n: i128) -> Q {
        let f = self.f;
        q(1) + Q::new(n * (n + f) * (2 * n + f), 12) * self.a3
            + q(n) * self.ac2 / q(12)
            + self.local(n)
    }

    /// Coefficient of t^n of the closed-form Hilbert series, expanded term by
    /// term: 1/(1-t), the cubic over (1-t)^4, t/(1-t)^2 and the periodic
    /// local parts over 1-t^r.
    pub fn series_coeff(&self, n: i128) -> Q {
        let f = self.f;
        let cubic = [
            (1, f * f + 3 * f + 2),
            (2, 8 - 2 * f * f),
            (3, f * f - 3 * f + 2),
        ];
        let binom3 = |m: i128| {
            if m < 0 {
                0
            } else {
                (m + 3) * (m + 2) * (m + 1) / 6
            }
        };
        let mut c = q(1);
        let s: i128 = cubic.iter().map(|&(k, ck)| ck * binom3(n - k)).sum();
        c += self.a3 * q(s) / q(12);
        c += self.ac2 * q(n) / q(12);
        for &(r, a) in &self.germs {
            let k = n.rem_euclid(r);
            if k > 0 {
                c += c_p(r, a, f, k);
            }
        }
        c
    }
}

pub const SAMPLE_SEED: u64 = 0x005e_edf3;

/// `count` baskets drawn uniformly (with replacement) from the enumerated
/// baskets of the given indices.
pub fn random_baskets(indices: &[u32], count: usize) -> Vec<Basket> {
    let pools: Vec<Vec<Basket>> = indices
        .iter()
        .map(|&f| fano3_core::pipeline::enumerate_baskets(f).unwrap())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
    (0..count)
        .map(|_| {
            pools
                .choose(&mut rng)
                .unwrap()
                .choose(&mut rng)
                .unwrap()
                .clone()
        })
        .collect()
}

/// Every 1c survivor across the indices.
pub fn survivors(indices: &[u32]) -> Vec<fano3_core::orbifold::Candidate> {
    indices
        .iter()
        .flat_map(|&f| {
            fano3_core::pipeline::run_pipeline(f, Default::default())
                .unwrap()
                .candidates
        })
        .collect()
}
