use crate::error::{Error, Result};

/// A finite domain `{0, …, n-1}` with `n ≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Domain {
    size: usize,
}

impl Domain {
    pub fn new(size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::Invalid("domain size must be at least 1".into()));
        }
        Ok(Domain { size })
    }

    pub fn size(self) -> usize {
        self.size
    }

    pub fn elements(self) -> std::ops::Range<usize> {
        0..self.size
    }

    pub fn check_element(self, element: usize) -> Result<()> {
        if element >= self.size {
            return Err(Error::OutOfDomain {
                element,
                size: self.size,
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_size_rejected() {
        assert!(Domain::new(0).is_err());
        assert_eq!(Domain::new(3).unwrap().elements().count(), 3);
    }
}
