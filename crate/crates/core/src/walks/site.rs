//! Packed lattice sites and the occupancy table used by the depth-first
//! enumerators.

use crate::error::{Error, Result};

/// Sites of `Z^dim` with `|x_i| ≤ radius`, packed into a `u128` with every
/// coordinate offset to be positive. Steps are plain integer additions.
#[derive(Clone, Debug)]
pub(crate) struct Packing {
    bits: u32,
    dim: usize,
    radius: i64,
}

impl Packing {
    pub fn new(dim: usize, radius: usize) -> Result<Self> {
        let span = 2 * radius as u64 + 3;
        let bits = 64 - span.leading_zeros();
        if dim == 0 || bits as usize * dim > 128 {
            return Err(Error::InvalidArgument(format!(
                "cannot pack {dim} coordinates of radius {radius} into 128 bits"
            )));
        }
        Ok(Packing { bits, dim, radius: radius as i64 })
    }

    pub fn origin(&self) -> u128 {
        (0..self.dim).fold(0u128, |acc, i| acc | (((self.radius + 1) as u128) << (self.bits * i as u32)))
    }

    pub fn unit(&self, axis: usize) -> u128 {
        1u128 << (self.bits * axis as u32)
    }

    /// `(delta, negative)` for `+e_0, −e_0, +e_1, −e_1, …`.
    pub fn steps(&self) -> Vec<(u128, bool)> {
        (0..self.dim).flat_map(|a| [(self.unit(a), false), (self.unit(a), true)]).collect()
    }
}

#[inline]
pub(crate) fn apply(site: u128, step: (u128, bool)) -> u128 {
    if step.1 {
        site - step.0
    } else {
        site + step.0
    }
}

/// Open-addressing set with linear probing whose removals are strictly
/// last-in-first-out. Clearing a slot on removal is then safe: every key
/// still present was inserted earlier and never probed past that slot.
#[derive(Clone, Debug)]
pub(crate) struct LifoSet {
    slots: Vec<u128>,
    shift: u32,
    stack: Vec<usize>,
}

impl LifoSet {
    pub fn with_capacity(items: usize) -> Self {
        let cap = (4 * items.max(4)).next_power_of_two();
        LifoSet {
            slots: vec![0; cap],
            shift: 64 - cap.trailing_zeros(),
            stack: Vec::with_capacity(items),
        }
    }

    #[inline]
    fn home(&self, key: u128) -> usize {
        let mixed = (key as u64) ^ ((key >> 64) as u64).rotate_left(29);
        (mixed.wrapping_mul(0x9E37_79B9_7F4A_7C15) >> self.shift) as usize
    }

    /// Key 0 is reserved as the empty marker; packed sites are never 0.
    #[inline]
    pub fn contains(&self, key: u128) -> bool {
        let mask = self.slots.len() - 1;
        let mut i = self.home(key);
        loop {
            match self.slots[i] {
                0 => return false,
                k if k == key => return true,
                _ => i = (i + 1) & mask,
            }
        }
    }

    #[inline]
    pub fn push(&mut self, key: u128) {
        let mask = self.slots.len() - 1;
        let mut i = self.home(key);
        while self.slots[i] != 0 {
            i = (i + 1) & mask;
        }
        self.slots[i] = key;
        self.stack.push(i);
    }

    #[inline]
    pub fn pop(&mut self) {
        let i = self.stack.pop().expect("pop on empty set");
        self.slots[i] = 0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lifo_set_behaves_like_a_stack_of_members() {
        let mut s = LifoSet::with_capacity(8);
        let keys = [5u128, 5 + (1 << 70), 17, 1 << 100, 9];
        for &k in &keys {
            assert!(!s.contains(k));
            s.push(k);
            assert!(s.contains(k));
        }
        for (i, &k) in keys.iter().enumerate().rev() {
            s.pop();
            assert!(!s.contains(k));
            for &older in &keys[..i] {
                assert!(s.contains(older));
            }
        }
    }

    #[test]
    fn packing_round_trip_of_steps() {
        let p = Packing::new(3, 4).unwrap();
        let o = p.origin();
        let steps = p.steps();
        assert_eq!(steps.len(), 6);
        for &st in &steps {
            let there = apply(o, st);
            assert_ne!(there, o);
            assert_eq!(apply(there, (st.0, !st.1)), o);
        }
        assert!(Packing::new(40, 100).is_err());
    }
}
