//! Boost-by-majority potentials and weights.
//!
//! Think of a biased random walk with `m` remaining steps, each `+1` with
//! probability `(1 + gamma) / 2` and `-1` otherwise. The potential
//! `potential(m, s, gamma)` is the probability that, started from margin `s`,
//! the walk ends at or below zero, which is the lower binomial tail
//!
//! ```text
//! potential(m, s) = sum_{k=0}^{floor((m - s) / 2)} C(m, k) a^k b^(m-k)
//! ```
//!
//! with `a = (1 + gamma) / 2`, `b = (1 - gamma) / 2`, and an empty sum when
//! the cap is negative. These potentials satisfy the blending recurrence
//!
//! ```text
//! potential(m, s) = b * potential(m-1, s-1) + a * potential(m-1, s+1)
//! ```
//!
//! with equality, and the booster's per-round weight is the single
//! probability-mass term `bbm_weight(m, s) = C(m, k) a^k b^(m-k)` at
//! `k = floor((m - s + 1) / 2)`, which equals the potential difference
//! `potential(m, s-1) - potential(m, s+1)`.
//!
//! Binomial coefficients overflow `f64` near `m = 60`, and the boosters here
//! run with hundreds of learners, so every term is assembled in log space
//! from a cached log-factorial table and the tail sums use compensated
//! summation. The floor in `k` must round toward negative infinity: margins
//! beyond `m` drive the argument negative, and exactly then the
//! `C(m, k) = 0` guard has to engage.

/// Classic compensated (Kahan) accumulator for same-sign tail sums.
#[derive(Debug, Clone, Copy, Default)]
struct KahanSum {
    sum: f64,
    compensation: f64,
}

impl KahanSum {
    fn add(&mut self, x: f64) {
        let y = x - self.compensation;
        let t = self.sum + y;
        self.compensation = (t - self.sum) - y;
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum
    }
}

/// Log-space binomial kernel over a cached log-factorial table.
///
/// Build it once with the largest `n` you will query; every weight evaluation
/// is then O(1) and every tail sum O(n).
#[derive(Debug, Clone)]
pub struct LogBinomial {
    lnfact: Vec<f64>,
}

impl LogBinomial {
    pub fn with_max_n(max_n: usize) -> LogBinomial {
        let mut lnfact = Vec::with_capacity(max_n + 1);
        lnfact.push(0.0);
        let mut acc = KahanSum::default();
        for k in 1..=max_n {
            acc.add((k as f64).ln());
            lnfact.push(acc.value());
        }
        LogBinomial { lnfact }
    }

    pub fn max_n(&self) -> usize {
        self.lnfact.len() - 1
    }

    /// `ln C(n, k)`, negative infinity when `k` is out of `[0, n]`.
    pub fn log_choose(&self, n: usize, k: i64) -> f64 {
        if k < 0 || k > n as i64 {
            return f64::NEG_INFINITY;
        }
        let k = k as usize;
        self.lnfact[n] - self.lnfact[k] - self.lnfact[n - k]
    }

    /// `ln [ C(m, k) a^k b^(m-k) ]` for head probability `a = (1+gamma)/2`.
    pub fn log_pmf(&self, m: usize, k: i64, gamma: f64) -> f64 {
        let log_choose = self.log_choose(m, k);
        if log_choose == f64::NEG_INFINITY {
            return f64::NEG_INFINITY;
        }
        let a = 0.5 * (1.0 + gamma);
        let b = 0.5 * (1.0 - gamma);
        log_choose + k as f64 * a.ln() + (m - k as usize) as f64 * b.ln()
    }

    /// Log of the booster weight at layer `m` for pre-vote margin `s`.
    pub fn log_weight(&self, remaining: usize, margin_prev: i64, gamma: f64) -> f64 {
        let k = (remaining as i64 - margin_prev + 1).div_euclid(2);
        self.log_pmf(remaining, k, gamma)
    }

    pub fn weight(&self, remaining: usize, margin_prev: i64, gamma: f64) -> f64 {
        self.log_weight(remaining, margin_prev, gamma).exp()
    }

    /// The binomial-tail potential at layer `m` and margin `s`.
    pub fn potential(&self, remaining: usize, margin: i64, gamma: f64) -> f64 {
        let cap = (remaining as i64 - margin).div_euclid(2);
        if cap < 0 {
            return 0.0;
        }
        let top = cap.min(remaining as i64);
        let mut tail = KahanSum::default();
        for k in 0..=top {
            tail.add(self.log_pmf(remaining, k, gamma).exp());
        }
        tail.value()
    }

    /// Log of the largest weight over margins `{-bound, -bound+2, ..., bound}`.
    pub fn log_weight_sup(&self, remaining: usize, margin_bound: u32, gamma: f64) -> f64 {
        let bound = i64::from(margin_bound);
        let mut best = f64::NEG_INFINITY;
        let mut s = -bound;
        while s <= bound {
            best = best.max(self.log_weight(remaining, s, gamma));
            s += 2;
        }
        best
    }

    pub fn weight_sup(&self, remaining: usize, margin_bound: u32, gamma: f64) -> f64 {
        self.log_weight_sup(remaining, margin_bound, gamma).exp()
    }
}

/// `potential` without a shared kernel; fine for one-off evaluations.
pub fn potential(remaining: usize, margin: i64, gamma: f64) -> f64 {
    LogBinomial::with_max_n(remaining).potential(remaining, margin, gamma)
}

/// The Online BBM per-round weight `C(m, k) a^k b^(m-k)` at
/// `k = floor((m - s + 1) / 2)`, zero when `k` leaves `[0, m]`.
pub fn bbm_weight(remaining: usize, margin_prev: i64, gamma: f64) -> f64 {
    LogBinomial::with_max_n(remaining).weight(remaining, margin_prev, gamma)
}

/// Largest weight over the margins reachable at a layer: integers in
/// `[-margin_bound, margin_bound]` sharing the bound's parity.
pub fn weight_sup(remaining: usize, margin_bound: u32, gamma: f64) -> f64 {
    LogBinomial::with_max_n(remaining).weight_sup(remaining, margin_bound, gamma)
}

/// Precomputed potentials, weights, and per-layer weight suprema for an
/// `n`-learner Online BBM booster with edge parameter `gamma`.
///
/// Layer `m` counts the learners still to vote, so the booster's learner `i`
/// (1-based) works at layer `m = n - i`. The margin entering that layer is a
/// sum of `i - 1` signed votes: an integer in `[-(n-m-1), n-m-1]` with the
/// bound's parity. Suprema are exact maxima over exactly that reachable set,
/// which keeps every feed probability within `[0, 1]` without slack.
///
/// Immutable after construction and safe to share between runs.
#[derive(Debug, Clone)]
pub struct PotentialTable {
    n: usize,
    gamma: f64,
    kernel: LogBinomial,
    /// `tails[m][k]` is the tail sum of the first `k + 1` pmf terms at layer
    /// `m`; the potential at margin `s` reads the prefix at the tail cap.
    tails: Vec<Vec<f64>>,
    /// `log_sups[m]` for layers `m` in `[0, n-1]`.
    log_sups: Vec<f64>,
}

impl PotentialTable {
    pub fn new(n: usize, gamma: f64) -> PotentialTable {
        assert!(n >= 1, "a booster needs at least one weak learner");
        assert!(
            (0.0..0.5).contains(&gamma),
            "edge parameter {gamma} outside [0, 0.5)"
        );
        let kernel = LogBinomial::with_max_n(n);
        let mut tails = Vec::with_capacity(n + 1);
        for m in 0..=n {
            let mut prefix = Vec::with_capacity(m + 1);
            let mut acc = KahanSum::default();
            for k in 0..=m {
                acc.add(kernel.log_pmf(m, k as i64, gamma).exp());
                prefix.push(acc.value());
            }
            tails.push(prefix);
        }
        let log_sups = (0..n)
            .map(|m| kernel.log_weight_sup(m, (n - 1 - m) as u32, gamma))
            .collect();
        PotentialTable {
            n,
            gamma,
            kernel,
            tails,
            log_sups,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// The potential at layer `m <= n`, any integer margin.
    pub fn potential(&self, remaining: usize, margin: i64) -> f64 {
        let cap = (remaining as i64 - margin).div_euclid(2);
        if cap < 0 {
            return 0.0;
        }
        let top = cap.min(remaining as i64) as usize;
        self.tails[remaining][top]
    }

    pub fn log_weight(&self, remaining: usize, margin_prev: i64) -> f64 {
        self.kernel.log_weight(remaining, margin_prev, self.gamma)
    }

    pub fn weight(&self, remaining: usize, margin_prev: i64) -> f64 {
        self.log_weight(remaining, margin_prev).exp()
    }

    /// Log of the exact weight supremum at layer `m < n`.
    pub fn log_weight_sup(&self, remaining: usize) -> f64 {
        self.log_sups[remaining]
    }

    pub fn weight_sup(&self, remaining: usize) -> f64 {
        self.log_sups[remaining].exp()
    }
}
