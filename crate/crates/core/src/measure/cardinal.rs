use std::fmt;

/// An infinite cardinal `ℵ_k`, identified by its index `k`. Only the order
/// of cardinals is ever needed, so the index carries everything.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cardinal(u32);

impl Cardinal {
    pub const fn aleph(index: u32) -> Self {
        Cardinal(index)
    }

    pub const fn aleph_index(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Cardinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ℵ_{}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_follows_index() {
        assert!(Cardinal::aleph(0) < Cardinal::aleph(1));
        assert_eq!(Cardinal::aleph(3).max(Cardinal::aleph(2)), Cardinal::aleph(3));
        assert_eq!(Cardinal::aleph(2).to_string(), "ℵ_2");
    }
}
