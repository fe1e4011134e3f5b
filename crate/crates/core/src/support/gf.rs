//! The finite fields GF(2^k) for 1 ≤ k ≤ 8, elements as bit vectors of polynomial coefficients.

/// Irreducible moduli of degree k, indexed by k.
const MODULI: [u32; 9] = [0, 0b10, 0b111, 0b1011, 0b1_0011, 0b10_0101, 0b100_0011, 0b1000_0011, 0x11B];

pub const MAX_DEGREE: u32 = 8;

#[derive(Clone, Debug)]
pub struct Gf {
    pub k: u32,
    modulus: u32,
    inverse: Vec<u32>,
}

impl Gf {
    pub fn new(k: u32) -> Gf {
        assert!((1..=MAX_DEGREE).contains(&k), "field degree out of range");
        let mut f = Gf { k, modulus: MODULI[k as usize], inverse: Vec::new() };
        let q = f.size();
        // a^{q−2} = a⁻¹ on the multiplicative group
        f.inverse = (0..q).map(|a| if a == 0 { 0 } else { f.pow_u(a, q as u64 - 2) }).collect();
        f
    }

    pub fn size(&self) -> u32 {
        1 << self.k
    }

    pub fn mul(&self, mut a: u32, mut b: u32) -> u32 {
        let top = 1 << self.k;
        let mut r = 0;
        while b != 0 {
            if b & 1 == 1 {
                r ^= a;
            }
            b >>= 1;
            a <<= 1;
            if a & top != 0 {
                a ^= self.modulus;
            }
        }
        r
    }

    fn pow_u(&self, a: u32, mut e: u64) -> u32 {
        let (mut acc, mut base) = (1, a);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u32) -> u32 {
        debug_assert!(a != 0);
        self.inverse[a as usize]
    }

    /// Any integer power of a nonzero element.
    pub fn pow(&self, a: u32, e: i64) -> u32 {
        let order = (self.size() - 1) as i64;
        self.pow_u(a, e.rem_euclid(order) as u64)
    }

    /// Rank of a matrix over the field.
    pub fn rank(&self, mut m: Vec<Vec<u32>>) -> usize {
        let cols = m.first().map_or(0, Vec::len);
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else {
                continue;
            };
            m.swap(r, p);
            let inv = self.inv(m[r][c]);
            let pivot: Vec<u32> = m[r].iter().map(|&x| self.mul(x, inv)).collect();
            for (i, row) in m.iter_mut().enumerate() {
                if i != r && row[c] != 0 {
                    let f = row[c];
                    for (x, &y) in row.iter_mut().zip(&pivot) {
                        *x ^= self.mul(f, y);
                    }
                }
            }
            m[r] = pivot;
            r += 1;
        }
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiplicative_groups_are_cyclic_of_the_right_order() {
        for k in 1..=MAX_DEGREE {
            let f = Gf::new(k);
            let q = f.size();
            for a in 1..q {
                assert_eq!(f.mul(a, f.inv(a)), 1);
                assert_eq!(f.pow(a, (q - 1) as i64), 1);
            }
            // a generator exists, so the modulus is irreducible
            let has_generator = (1..q).any(|g| (1..q - 1).all(|e| f.pow(g, e as i64) != 1));
            assert!(has_generator || q == 2, "k = {k}");
        }
    }
}
