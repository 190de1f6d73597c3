use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::evolution::GeneratorSpec;
use crate::numerics::check_grid;
use crate::state::StateVector;

/// A sampled curve `s ↦ φ(s)` in Hilbert space together with its parameter grid.
#[derive(Debug, Clone)]
pub struct Trajectory {
    times: Vec<f64>,
    states: Vec<StateVector>,
    generator: Option<GeneratorSpec>,
}

impl Trajectory {
    pub fn new(times: Vec<f64>, states: Vec<StateVector>) -> Result<Self> {
        check_grid(&times, 2)?;
        if times.len() != states.len() {
            return Err(Error::DimensionMismatch {
                expected: times.len(),
                found: states.len(),
            });
        }
        let dim = states[0].dim();
        if let Some(bad) = states.iter().find(|s| s.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.dim(),
            });
        }
        Ok(Self {
            times,
            states,
            generator: None,
        })
    }

    /// Sample `curve` at every point of `grid`.
    pub fn sample<F>(grid: Vec<f64>, mut curve: F) -> Result<Self>
    where
        F: FnMut(f64) -> Result<StateVector>,
    {
        let states = grid.iter().map(|&s| curve(s)).collect::<Result<Vec<_>>>()?;
        Self::new(grid, states)
    }

    pub(crate) fn with_generator(mut self, gen: GeneratorSpec) -> Self {
        self.generator = Some(gen);
        self
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn states(&self) -> &[StateVector] {
        &self.states
    }

    /// Generator that produced the curve, when it came from an integration.
    pub fn generator(&self) -> Option<&GeneratorSpec> {
        self.generator.as_ref()
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.states[0].dim()
    }

    pub fn first(&self) -> &StateVector {
        &self.states[0]
    }

    pub fn last(&self) -> &StateVector {
        self.states.last().unwrap()
    }

    /// Multiply every sample by the constant `c ≠ 0`.
    pub fn scaled(&self, c: C64) -> Result<Self> {
        let states = self
            .states
            .iter()
            .map(|s| s.scaled(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            times: self.times.clone(),
            states,
            generator: self.generator.clone(),
        })
    }

    pub(crate) fn amplitude_rows(&self) -> Vec<Vec<C64>> {
        self.states
            .iter()
            .map(|s| s.amplitudes().to_vec())
            .collect()
    }

    pub(crate) fn map_states<F>(&self, mut f: F) -> Self
    where
        F: FnMut(usize, &StateVector) -> StateVector,
    {
        Self {
            times: self.times.clone(),
            states: self
                .states
                .iter()
                .enumerate()
                .map(|(i, s)| f(i, s))
                .collect(),
            generator: self.generator.clone(),
        }
    }
}
