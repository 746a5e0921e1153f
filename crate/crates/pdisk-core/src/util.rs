//! Small shared utilities.

/// Deterministic splitmix64 stream, used by the randomized self-tests and
/// by acceptance suites so that runs are reproducible from a single seed.
#[derive(Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in `0..n`.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0);
        self.next_u64() % n
    }

    /// Uniform in `lo..=hi`.
    pub fn range_i64(&mut self, lo: i64, hi: i64) -> i64 {
        assert!(lo <= hi);
        lo + (self.below((hi - lo + 1) as u64) as i64)
    }

    /// A small nonzero rational with numerator in `-span..=span` and
    /// denominator in `1..=den`.
    pub fn small_rat(&mut self, span: i64, den: i64) -> crate::cyc::Rat {
        let mut n = self.range_i64(-span, span);
        if n == 0 {
            n = 1;
        }
        let d = self.range_i64(1, den);
        crate::cyc::rat(n, d)
    }

    /// A small rational, possibly zero.
    pub fn small_rat_or_zero(&mut self, span: i64, den: i64) -> crate::cyc::Rat {
        let n = self.range_i64(-span, span);
        let d = self.range_i64(1, den);
        crate::cyc::rat(n, d)
    }
}

/// lcm of two positive integers.
pub fn lcm_u32(a: u32, b: u32) -> u32 {
    a / gcd_u32(a, b) * b
}

pub fn gcd_u32(a: u32, b: u32) -> u32 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a.max(1)
}
