use super::rational::{rat, Rational};

/// Spin parameter `2l`; matrices have size `2l + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SizeParam {
    two_ell: usize,
}

impl SizeParam {
    pub fn new(two_ell: usize) -> Self {
        SizeParam { two_ell }
    }

    pub fn two_ell(self) -> usize {
        self.two_ell
    }

    pub fn dim(self) -> usize {
        self.two_ell + 1
    }

    pub fn ell(self) -> Rational {
        rat(self.two_ell as i64, 2)
    }

    pub fn floor_ell(self) -> usize {
        self.two_ell / 2
    }

    /// `1 + min(i, 2l-i, j, 2l-j)`
    pub fn echelon(self, i: usize, j: usize) -> usize {
        let l = self.two_ell;
        1 + i.min(l - i).min(j).min(l - j)
    }
}
