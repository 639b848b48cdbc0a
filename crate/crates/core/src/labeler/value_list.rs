use std::fmt;

/// The pool of small pendant-edge labels `1..s`, ordered
/// `1, s-1, 2, s-2, 3, s-3, ...`.
///
/// Draws come either as pairs from the front (each pair sums to `s`) or as
/// single values from the back. The two cursors may meet but never cross.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValueList {
    s: u32,
    order: Vec<u32>,
    front: usize,
    back: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PoolExhausted {
    pub requested: usize,
    pub remaining: usize,
}

impl fmt::Display for PoolExhausted {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "value pool exhausted: {} values requested, {} left",
            self.requested, self.remaining
        )
    }
}

impl ValueList {
    /// Returns `None` for `s < 2`.
    pub fn new(s: u32) -> Option<Self> {
        if s < 2 {
            return None;
        }
        let mut order = Vec::with_capacity(s as usize - 1);
        let (mut lo, mut hi) = (1, s - 1);
        while lo <= hi {
            order.push(lo);
            if lo != hi {
                order.push(hi);
            }
            lo += 1;
            hi -= 1;
        }
        let back = order.len();
        Some(ValueList {
            s,
            order,
            front: 0,
            back,
        })
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn order(&self) -> &[u32] {
        &self.order
    }

    pub fn remaining(&self) -> usize {
        self.back - self.front
    }

    /// Takes the next two values from the front; they sum to `s`.
    pub fn take_pair(&mut self) -> Result<(u32, u32), PoolExhausted> {
        if self.remaining() < 2 {
            return Err(PoolExhausted {
                requested: 2,
                remaining: self.remaining(),
            });
        }
        let pair = (self.order[self.front], self.order[self.front + 1]);
        self.front += 2;
        Ok(pair)
    }

    /// Takes the last unused value.
    pub fn take_tail(&mut self) -> Result<u32, PoolExhausted> {
        if self.remaining() < 1 {
            return Err(PoolExhausted {
                requested: 1,
                remaining: 0,
            });
        }
        self.back -= 1;
        Ok(self.order[self.back])
    }
}
