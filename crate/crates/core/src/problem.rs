//! Problem descriptions and their textual syntax.

use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactnum::rational::to_f64;
use crate::exactnum::{format_rational, int, parse_rational, Rational};

/// `[a_1, b_1] × … × [a_d, b_d]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CuboidSpec {
    pub bounds: Vec<(Rational, Rational)>,
}

impl CuboidSpec {
    pub fn new(bounds: Vec<(Rational, Rational)>) -> Result<Self> {
        for (a, b) in &bounds {
            if a > b {
                return Err(Error::InvalidInterval { lower: format_rational(a), upper: format_rational(b) });
            }
        }
        Ok(Self { bounds })
    }

    /// `[0,1]^d`.
    pub fn unit(d: usize) -> Self {
        Self { bounds: vec![(int(0), int(1)); d] }
    }

    /// Integer-bounded box from `(a_j, b_j)` pairs.
    pub fn from_ints(bounds: &[(i64, i64)]) -> Self {
        Self::new(bounds.iter().map(|&(a, b)| (int(a), int(b))).collect()).expect("ordered bounds")
    }

    pub fn dim(&self) -> usize {
        self.bounds.len()
    }

    pub fn bounds_f64(&self) -> Vec<(f64, f64)> {
        self.bounds.iter().map(|(a, b)| (to_f64(a), to_f64(b))).collect()
    }

    /// Parses `"a1,b1;a2,b2;..."`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut bounds = Vec::new();
        for part in s.split(';') {
            let xs: Vec<&str> = part.split(',').map(str::trim).collect();
            if xs.len() != 2 {
                return Err(Error::Parse(format!("expected 'a,b' but got '{part}'")));
            }
            bounds.push((parse_rational(xs[0])?, parse_rational(xs[1])?));
        }
        Self::new(bounds)
    }

    fn to_json(&self) -> Value {
        Value::Array(
            self.bounds
                .iter()
                .map(|(a, b)| json!([format_rational(a), format_rational(b)]))
                .collect(),
        )
    }
}

pub fn parse_indices(s: &str) -> Result<Vec<u32>> {
    s.split(',')
        .map(|x| x.trim().parse::<u32>().map_err(|e| Error::Parse(format!("index '{x}': {e}"))))
        .collect()
}

pub fn parse_point(s: &str) -> Result<Vec<Rational>> {
    s.split(',').map(|x| parse_rational(x.trim())).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    /// `∬ x^n y^m / |x-y|`.
    Potential,
    /// `∬ x^n y^m (x_k - y_k) / |x-y|³`, axis `k` counted from 1.
    Force { axis: usize },
    /// `∬ x^n y^m / |x-y|³`.
    InverseCube,
    /// `∫ x^n / |x-y|` at a fixed point `y`.
    PointPotential,
    /// `∫ x^n (x_k - y_k) / |x-y|³` at a fixed point `y`.
    PointForce { axis: usize },
}

impl Kind {
    pub fn name(&self) -> &'static str {
        match self {
            Kind::Potential => "potential",
            Kind::Force { .. } => "force",
            Kind::InverseCube => "inverse-cube",
            Kind::PointPotential => "point-potential",
            Kind::PointForce { .. } => "point-force",
        }
    }

    pub fn axis(&self) -> Option<usize> {
        match self {
            Kind::Force { axis } | Kind::PointForce { axis } => Some(*axis),
            _ => None,
        }
    }

    pub fn is_point(&self) -> bool {
        matches!(self, Kind::PointPotential | Kind::PointForce { .. })
    }

    /// Singularity order `p` of the kernel `~ |x-y|^{-p}`.
    fn singularity(&self) -> usize {
        match self {
            Kind::Potential | Kind::PointPotential => 1,
            Kind::Force { .. } | Kind::PointForce { .. } => 2,
            Kind::InverseCube => 3,
        }
    }
}

/// The second body: a cuboid or a field point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    Cuboid(CuboidSpec),
    Point(Vec<Rational>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemSpec {
    pub kind: Kind,
    pub q: CuboidSpec,
    pub source: Source,
    pub n: Vec<u32>,
    pub m: Vec<u32>,
    /// Regularization `1/√(|x-y|² + ρ²)`, dimensions 1 and 2 only.
    pub rho: Rational,
    /// Overall factor applied to the result.
    pub scale: Rational,
    pub digits: u32,
    /// Above this dimension only the direct quadrature is attempted.
    pub symbolic_max_dim: usize,
}

pub const DEFAULT_SYMBOLIC_MAX_DIM: usize = 6;

impl ProblemSpec {
    pub fn two_body(kind: Kind, q: CuboidSpec, qp: CuboidSpec, n: Vec<u32>, m: Vec<u32>) -> Self {
        Self {
            kind,
            q,
            source: Source::Cuboid(qp),
            n,
            m,
            rho: Rational::zero(),
            scale: int(1),
            digits: 12,
            symbolic_max_dim: DEFAULT_SYMBOLIC_MAX_DIM,
        }
    }

    pub fn point(kind: Kind, q: CuboidSpec, y: Vec<Rational>, n: Vec<u32>) -> Self {
        let d = q.dim();
        Self {
            kind,
            q,
            source: Source::Point(y),
            n,
            m: vec![0; d],
            rho: Rational::zero(),
            scale: int(1),
            digits: 12,
            symbolic_max_dim: DEFAULT_SYMBOLIC_MAX_DIM,
        }
    }

    pub fn with_rho(mut self, rho: Rational) -> Self {
        self.rho = rho;
        self
    }

    pub fn with_scale(mut self, scale: Rational) -> Self {
        self.scale = scale;
        self
    }

    pub fn dim(&self) -> usize {
        self.q.dim()
    }

    pub fn validate(&self) -> Result<()> {
        let d = self.dim();
        let bad = |msg: String| Err(Error::InvalidSpec(msg));
        if d == 0 {
            return bad("dimension must be at least 1".into());
        }
        if self.n.len() != d {
            return bad(format!("n has {} entries for dimension {d}", self.n.len()));
        }
        if let Some(axis) = self.kind.axis() {
            if axis == 0 || axis > d {
                return bad(format!("axis {axis} outside 1..={d}"));
            }
        }
        match (&self.source, self.kind.is_point()) {
            (Source::Cuboid(qp), false) => {
                if qp.dim() != d {
                    return bad(format!("second cuboid has dimension {}, expected {d}", qp.dim()));
                }
                if self.m.len() != d {
                    return bad(format!("m has {} entries for dimension {d}", self.m.len()));
                }
            }
            (Source::Point(y), true) => {
                if y.len() != d {
                    return bad(format!("field point has {} coordinates, expected {d}", y.len()));
                }
            }
            (Source::Cuboid(_), true) => return bad("point problems need a field point".into()),
            (Source::Point(_), false) => return bad("two-body problems need a second cuboid".into()),
        }
        if self.rho.is_negative() {
            return bad("ρ must be non-negative".into());
        }
        if !self.rho.is_zero() && d > 2 {
            return bad("ρ is only supported in dimensions 1 and 2".into());
        }
        if d == 1 && self.rho.is_zero() && self.kind == Kind::Potential {
            if let Source::Cuboid(qp) = &self.source {
                let (a, b) = &self.q.bounds[0];
                let (ap, bp) = &qp.bounds[0];
                if !(b < ap || bp < a) {
                    return bad("overlapping or touching intervals in one dimension need ρ > 0".into());
                }
            }
        }
        Ok(())
    }

    /// Whether the defining multiple integral converges absolutely.
    pub fn converges(&self) -> bool {
        if self.rho.is_positive() {
            return true;
        }
        let d = self.dim();
        let p = self.kind.singularity();
        match &self.source {
            Source::Cuboid(qp) => {
                let mut touching = 0;
                for ((a, b), (ap, bp)) in self.q.bounds.iter().zip(&qp.bounds) {
                    if a == b || ap == bp || b < ap || bp < a {
                        return true;
                    }
                    if b == ap || bp == a {
                        touching += 1;
                    }
                }
                d + touching > p
            }
            Source::Point(y) => {
                for ((a, b), yj) in self.q.bounds.iter().zip(y) {
                    if a == b || yj < a || yj > b {
                        return true;
                    }
                }
                d > p
            }
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "kind": self.kind.name(),
            "dim": self.dim(),
            "q": self.q.to_json(),
            "n": self.n,
            "rho": format_rational(&self.rho),
            "scale": format_rational(&self.scale),
        });
        let obj = v.as_object_mut().expect("object");
        if let Some(axis) = self.kind.axis() {
            obj.insert("axis".into(), json!(axis));
        }
        match &self.source {
            Source::Cuboid(qp) => {
                obj.insert("qp".into(), qp.to_json());
                obj.insert("m".into(), json!(self.m));
            }
            Source::Point(y) => {
                obj.insert("y".into(), json!(y.iter().map(format_rational).collect::<Vec<_>>()));
            }
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    #[test]
    fn parsing() {
        let q = CuboidSpec::parse("1,2; 0,1;0, 1/2").unwrap();
        assert_eq!(q.bounds[2], (int(0), rat(1, 2)));
        assert!(CuboidSpec::parse("1,0").is_err());
        assert!(CuboidSpec::parse("1;2").is_err());
        assert_eq!(parse_indices("1, 2,0").unwrap(), vec![1, 2, 0]);
        assert_eq!(parse_point("0.5,-1").unwrap(), vec![rat(1, 2), int(-1)]);
    }

    #[test]
    fn validation() {
        let unit = CuboidSpec::unit(3);
        let ok = ProblemSpec::two_body(Kind::Force { axis: 1 }, unit.clone(), unit.clone(), vec![0; 3], vec![0; 3]);
        assert!(ok.validate().is_ok());
        let mut bad = ok.clone();
        bad.kind = Kind::Force { axis: 4 };
        assert!(bad.validate().is_err());
        assert!(ok.clone().with_rho(int(1)).validate().is_err());
        let line = |a, b| CuboidSpec::from_ints(&[(a, b)]);
        let touching = ProblemSpec::two_body(Kind::Potential, line(0, 1), line(1, 2), vec![0], vec![0]);
        assert!(matches!(touching.validate(), Err(Error::InvalidSpec(_))));
        assert!(touching.clone().with_rho(rat(1, 10)).validate().is_ok());
        let apart = ProblemSpec::two_body(Kind::Potential, line(2, 3), line(0, 1), vec![1], vec![2]);
        assert!(apart.validate().is_ok());
    }

    #[test]
    fn convergence_rules() {
        let a = CuboidSpec::unit(3);
        let b = CuboidSpec::from_ints(&[(1, 2), (1, 2), (1, 2)]);
        let corner = ProblemSpec::two_body(Kind::InverseCube, a.clone(), b, vec![0; 3], vec![0; 3]);
        assert!(corner.converges());
        let same = ProblemSpec::two_body(Kind::InverseCube, a.clone(), a.clone(), vec![0; 3], vec![0; 3]);
        assert!(!same.converges());
        let face = CuboidSpec::from_ints(&[(1, 2), (0, 1), (0, 1)]);
        // the density of x − y vanishes linearly across a shared face
        assert!(ProblemSpec::two_body(Kind::InverseCube, a.clone(), face, vec![0; 3], vec![0; 3]).converges());
        assert!(ProblemSpec::two_body(Kind::Potential, a.clone(), a.clone(), vec![0; 3], vec![0; 3]).converges());
        let inside = ProblemSpec::point(Kind::PointForce { axis: 1 }, a, vec![rat(1, 2); 3], vec![0; 3]);
        assert!(inside.converges());
    }
}
