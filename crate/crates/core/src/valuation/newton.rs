use super::Rational;
use crate::error::{Error, Result};
use crate::rings::LaurentField;
use crate::series::TruncatedSeries;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    pub slope: Rational,
    pub length: usize,
}

impl Segment {
    /// Valuation shared by the `length` roots this segment accounts for.
    pub fn root_valuation(&self) -> Rational {
        -self.slope
    }
}

/// Lower convex hull of `(i, v(a_i))` over the nonzero coefficients.
///
/// The polynomial is taken as `z^ord * (a_ord + ... + a_deg z^{deg - ord})`:
/// `ord` roots sit at zero and the segments account for the remaining `deg - ord`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolygon {
    pub vertices: Vec<(usize, Rational)>,
    pub segments: Vec<Segment>,
}

impl NewtonPolygon {
    /// Hull of the given points; degrees must be distinct.
    pub fn from_points(points: &[(usize, Rational)]) -> Result<Self> {
        let mut pts = points.to_vec();
        pts.sort_by_key(|&(i, _)| i);
        if pts.is_empty() {
            return Err(Error::InvalidParameter("no points".into()));
        }
        if pts.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidParameter("repeated degree".into()));
        }
        let mut hull: Vec<(usize, Rational)> = Vec::new();
        for pt in pts {
            while hull.len() >= 2 {
                let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
                // Drop b unless it lies strictly below the chord from a to pt.
                let lhs = (b.1 - a.1) * Rational::from((pt.0 - a.0) as i64);
                let rhs = (pt.1 - a.1) * Rational::from((b.0 - a.0) as i64);
                if lhs >= rhs {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(pt);
        }
        let segments = hull
            .windows(2)
            .map(|w| {
                let length = w[1].0 - w[0].0;
                Segment {
                    slope: (w[1].1 - w[0].1) / Rational::from(length as i64),
                    length,
                }
            })
            .collect();
        Ok(NewtonPolygon {
            vertices: hull,
            segments,
        })
    }

    pub fn ord(&self) -> usize {
        self.vertices[0].0
    }

    pub fn degree(&self) -> usize {
        self.vertices.last().unwrap().0
    }

    /// `(valuation, multiplicity)` of the nonzero roots, largest valuation first.
    pub fn root_valuations(&self) -> Vec<(Rational, usize)> {
        self.segments
            .iter()
            .map(|s| (s.root_valuation(), s.length))
            .collect()
    }

    /// Nonzero roots of positive valuation, i.e. in the open unit disk.
    pub fn positive_root_valuations(&self) -> Vec<(Rational, usize)> {
        self.root_valuations()
            .into_iter()
            .filter(|(v, _)| *v > Rational::from(0))
            .collect()
    }
}

/// Polygon of an exact polynomial over `F_{p^d}((t))`.
pub fn newton_polygon(poly: &TruncatedSeries<LaurentField>) -> Result<NewtonPolygon> {
    if !poly.is_exact() {
        return Err(Error::NotAPolynomial);
    }
    let mut points = Vec::new();
    for (i, c) in poly.coeffs().iter().enumerate() {
        if let Some(v) = c.valuation()? {
            points.push((i, Rational::from(v)));
        }
    }
    if points.is_empty() {
        return Err(Error::InvalidParameter(
            "the zero polynomial has no Newton polygon".into(),
        ));
    }
    NewtonPolygon::from_points(&points)
}
