//! Piecewise-constant mass and potential profiles.
//!
//! A [`Structure`] is a left lead, a (possibly empty) stack of finite layers
//! and a right lead. The first interface sits at `x = 0`; later interfaces are
//! the cumulative sums of the layer widths.

use crate::error::{require_finite, require_positive, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Layer {
    width: f64,
    mass: f64,
    potential: f64,
}

impl Layer {
    pub fn new(width: f64, mass: f64, potential: f64) -> Result<Self> {
        Ok(Self {
            width: require_positive("layer width", width)?,
            mass: require_positive("layer mass", mass)?,
            potential: require_finite("layer potential", potential)?,
        })
    }

    pub fn width(&self) -> f64 {
        self.width
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn potential(&self) -> f64 {
        self.potential
    }
}

/// Semi-infinite uniform region.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lead {
    mass: f64,
    potential: f64,
}

impl Lead {
    pub fn new(mass: f64, potential: f64) -> Result<Self> {
        Ok(Self {
            mass: require_positive("lead mass", mass)?,
            potential: require_finite("lead potential", potential)?,
        })
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn potential(&self) -> f64 {
        self.potential
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Structure {
    left_lead: Lead,
    layers: Vec<Layer>,
    right_lead: Lead,
}

impl Structure {
    pub fn new(left_lead: Lead, layers: Vec<Layer>, right_lead: Lead) -> Self {
        Self {
            left_lead,
            layers,
            right_lead,
        }
    }

    /// Abrupt step at `x = 0`: `(m1, 0)` on the left, `(m2, v0)` on the right.
    pub fn step(m1: f64, m2: f64, v0: f64) -> Result<Self> {
        Ok(Self::new(Lead::new(m1, 0.0)?, Vec::new(), Lead::new(m2, v0)?))
    }

    /// Rectangular barrier (or well, for `v0 < 0`) of mass `m2` on `0 < x < a`
    /// embedded in a medium of mass `m1`.
    pub fn barrier(m1: f64, m2: f64, v0: f64, a: f64) -> Result<Self> {
        let lead = Lead::new(m1, 0.0)?;
        Ok(Self::new(lead, vec![Layer::new(a, m2, v0)?], lead))
    }

    /// `periods` barriers of width `a` separated by wells of width `b`, with
    /// well-material leads on both sides.
    pub fn multibarrier(m1: f64, m2: f64, v0: f64, a: f64, b: f64, periods: usize) -> Result<Self> {
        let lead = Lead::new(m1, 0.0)?;
        let barrier = Layer::new(a, m2, v0)?;
        let well = Layer::new(b, m1, 0.0)?;
        let mut layers = Vec::with_capacity(2 * periods);
        for i in 0..periods {
            if i > 0 {
                layers.push(well);
            }
            layers.push(barrier);
        }
        Ok(Self::new(lead, layers, lead))
    }

    pub fn left_lead(&self) -> &Lead {
        &self.left_lead
    }

    pub fn right_lead(&self) -> &Lead {
        &self.right_lead
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    /// Interface positions: `0`, then the running sum of layer widths.
    pub fn interfaces(&self) -> Vec<f64> {
        let mut x = 0.0;
        let mut out = Vec::with_capacity(self.layers.len() + 1);
        out.push(x);
        for layer in &self.layers {
            x += layer.width;
            out.push(x);
        }
        out
    }

    pub fn total_width(&self) -> f64 {
        self.layers.iter().map(|l| l.width).sum()
    }

    /// Same structure seen from the right.
    pub fn mirrored(&self) -> Self {
        Self {
            left_lead: self.right_lead,
            layers: self.layers.iter().rev().copied().collect(),
            right_lead: self.left_lead,
        }
    }

    /// Mass and potential of every region, leads included, left to right.
    pub fn regions(&self) -> Vec<(f64, f64)> {
        std::iter::once((self.left_lead.mass, self.left_lead.potential))
            .chain(self.layers.iter().map(|l| (l.mass, l.potential)))
            .chain(std::iter::once((self.right_lead.mass, self.right_lead.potential)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interfaces_are_cumulative() {
        let lead = Lead::new(1.0, 0.0).unwrap();
        let s = Structure::new(
            lead,
            vec![
                Layer::new(1.0, 2.0, 1.0).unwrap(),
                Layer::new(0.5, 1.0, 0.0).unwrap(),
                Layer::new(2.0, 3.0, -1.0).unwrap(),
            ],
            lead,
        );
        assert_eq!(s.interfaces(), vec![0.0, 1.0, 1.5, 3.5]);
        assert_eq!(s.total_width(), 3.5);
        assert!(s.interfaces().windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn rejects_bad_layers() {
        assert!(Layer::new(0.0, 1.0, 0.0).is_err());
        assert!(Layer::new(-1.0, 1.0, 0.0).is_err());
        assert!(Layer::new(f64::INFINITY, 1.0, 0.0).is_err());
        assert!(Layer::new(1.0, 0.0, 0.0).is_err());
        assert!(Layer::new(1.0, 1.0, f64::NAN).is_err());
        assert!(Lead::new(-1.0, 0.0).is_err());
    }

    #[test]
    fn mirror_reverses() {
        let s = Structure::new(
            Lead::new(1.0, 0.0).unwrap(),
            vec![Layer::new(1.0, 2.0, 1.0).unwrap(), Layer::new(3.0, 4.0, 2.0).unwrap()],
            Lead::new(5.0, -1.0).unwrap(),
        );
        let m = s.mirrored();
        assert_eq!(m.left_lead().mass(), 5.0);
        assert_eq!(m.layers()[0].width(), 3.0);
        assert_eq!(m.mirrored(), s);
    }

    #[test]
    fn multibarrier_layout() {
        let s = Structure::multibarrier(1.0, 2.0, 1.0, 1.0, 0.5, 3).unwrap();
        assert_eq!(s.layers().len(), 5);
        assert_eq!(s.total_width(), 4.0);
        assert_eq!(s.regions().len(), 7);
    }
}
