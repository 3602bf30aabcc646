use std::fmt;

/// Polynomial variable. The derived order is the global canonical order:
/// z < zbar < x < xbar < y < ybar < x1 < x2 < … < h1 < … < h[1]1 < ….
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    Z,
    Zbar,
    X,
    Xbar,
    Y,
    Ybar,
    /// Real coordinate x_i, 1-based.
    Coord(u16),
    /// Symbolic step component h_i, 1-based.
    Step(u16),
    /// Component i of the r-th symbolic step family, h[r]i.
    FamilyStep(u16, u16),
}

impl Var {
    pub fn conjugate(self) -> Var {
        match self {
            Var::Z => Var::Zbar,
            Var::Zbar => Var::Z,
            Var::X => Var::Xbar,
            Var::Xbar => Var::X,
            Var::Y => Var::Ybar,
            Var::Ybar => Var::Y,
            real => real,
        }
    }

    pub fn is_complex_form(self) -> bool {
        matches!(
            self,
            Var::Z | Var::Zbar | Var::X | Var::Xbar | Var::Y | Var::Ybar
        )
    }

    /// Coordinate index i for x_i, h_i and h[r]i.
    pub fn coordinate_index(self) -> Option<u16> {
        match self {
            Var::Coord(i) | Var::Step(i) | Var::FamilyStep(_, i) => Some(i),
            _ => None,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Z => f.write_str("z"),
            Var::Zbar => f.write_str("zbar"),
            Var::X => f.write_str("x"),
            Var::Xbar => f.write_str("xbar"),
            Var::Y => f.write_str("y"),
            Var::Ybar => f.write_str("ybar"),
            Var::Coord(i) => write!(f, "x{i}"),
            Var::Step(i) => write!(f, "h{i}"),
            Var::FamilyStep(r, i) => write!(f, "h[{r}]{i}"),
        }
    }
}
