//! Ground-truth signals, Gaussian sensing ensembles and magnitude observations.
//!
//! Variance conventions: a real signal and real sensing vectors have i.i.d.
//! `N(0, 1)` entries. A complex signal has real and imaginary parts i.i.d.
//! `N(0, 1)`; complex sensing vectors have real and imaginary parts i.i.d.
//! `N(0, 1/2)`, so that `E|⟨a_i, x⟩|² = ‖x‖²` in both fields.

use std::io::{Read, Write};

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{check_dim, invalid, Error, Result};
use crate::field::{inner, norm, Field, FieldTag};
use crate::seed::{self, stream};

/// A dense signal (ground truth or iterate).
#[derive(Debug, Clone, PartialEq)]
pub struct Signal<T: Field> {
    entries: Vec<T>,
}

impl<T: Field> Signal<T> {
    pub fn new(entries: Vec<T>) -> Result<Self> {
        if entries.is_empty() {
            return Err(invalid("signal length must be positive"));
        }
        if !entries.iter().all(|v| v.is_finite()) {
            return Err(invalid("signal entries must be finite"));
        }
        Ok(Self { entries })
    }

    pub(crate) fn from_vec_unchecked(entries: Vec<T>) -> Self {
        Self { entries }
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            entries: vec![T::zero(); n],
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn as_slice(&self) -> &[T] {
        &self.entries
    }

    pub fn as_mut_slice(&mut self) -> &mut [T] {
        &mut self.entries
    }

    pub fn into_vec(self) -> Vec<T> {
        self.entries
    }

    pub fn field(&self) -> FieldTag {
        T::TAG
    }

    pub fn norm(&self) -> f64 {
        norm(&self.entries)
    }

    /// `c · self`
    pub fn scaled(&self, c: T) -> Self {
        Self {
            entries: self.entries.iter().map(|&v| c * v).collect(),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.entries.iter().all(|v| v.is_finite())
    }
}

/// `m` sensing vectors of length `n`, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementSet<T: Field> {
    rows: Vec<T>,
    m: usize,
    n: usize,
}

impl<T: Field> MeasurementSet<T> {
    pub fn from_rows(m: usize, n: usize, rows: Vec<T>) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(invalid("measurement dimensions must be positive"));
        }
        check_dim(m * n, rows.len())?;
        Ok(Self { rows, m, n })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.rows[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        self.rows.chunks_exact(self.n)
    }

    pub fn as_slice(&self) -> &[T] {
        &self.rows
    }

    /// `w_i = ⟨a_i, z⟩` for every row.
    pub fn apply(&self, z: &[T]) -> Vec<T> {
        self.rows().map(|a| inner(a, z)).collect()
    }
}

/// Observed magnitudes `y_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct Observations {
    pub y: Vec<f64>,
    pub noise_level: f64,
}

impl Observations {
    pub fn len(&self) -> usize {
        self.y.len()
    }

    pub fn is_empty(&self) -> bool {
        self.y.is_empty()
    }

    pub fn mean_square(&self) -> f64 {
        self.y.iter().map(|v| v * v).sum::<f64>() / self.y.len() as f64
    }
}

/// Standard Gaussian signal of length `n`.
pub fn gen_signal<T: Field>(n: usize, seed: u64) -> Result<Signal<T>> {
    if n == 0 {
        return Err(invalid("signal length must be positive"));
    }
    let mut rng = seed::rng(seed);
    Ok(Signal {
        entries: (0..n).map(|_| T::gaussian(&mut rng, 1.0)).collect(),
    })
}

/// Per-component standard deviation of the sensing ensemble.
pub fn sensing_std(field: FieldTag) -> f64 {
    match field {
        FieldTag::Real => 1.0,
        FieldTag::Complex => std::f64::consts::FRAC_1_SQRT_2,
    }
}

/// `m × n` Gaussian sensing matrix.
pub fn gen_sensing<T: Field>(m: usize, n: usize, seed: u64) -> Result<MeasurementSet<T>> {
    if m == 0 || n == 0 {
        return Err(invalid("measurement dimensions must be positive"));
    }
    let std = sensing_std(T::TAG);
    let mut rng = seed::rng(seed);
    let rows = (0..m * n).map(|_| T::gaussian(&mut rng, std)).collect();
    Ok(MeasurementSet { rows, m, n })
}

/// `y_i = |⟨a_i, x⟩|`.
pub fn observe<T: Field>(a: &MeasurementSet<T>, x: &Signal<T>) -> Result<Observations> {
    check_dim(a.n(), x.len())?;
    Ok(Observations {
        y: a.rows().map(|row| inner(row, x.as_slice()).abs()).collect(),
        noise_level: 0.0,
    })
}

/// Adds `level · N(0, 1)` noise to every magnitude and clamps at zero.
pub fn add_noise(obs: &Observations, level: f64, seed: u64) -> Result<Observations> {
    if !(level >= 0.0) || !level.is_finite() {
        return Err(invalid("noise level must be a finite nonnegative number"));
    }
    if level == 0.0 {
        return Ok(obs.clone());
    }
    let mut rng = seed::rng(seed);
    let y = obs
        .y
        .iter()
        .map(|&yi| {
            let g: f64 = rng.sample(StandardNormal);
            (yi + level * g).max(0.0)
        })
        .collect();
    Ok(Observations {
        y,
        noise_level: level,
    })
}

/// One phase-retrieval instance: truth, sensing vectors and observations.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance<T: Field> {
    pub x: Signal<T>,
    pub a: MeasurementSet<T>,
    pub obs: Observations,
}

impl<T: Field> Instance<T> {
    /// Draws `x`, `A` and (noisy) `y` from independent streams of `trial_seed`.
    pub fn generate(n: usize, m: usize, noise_level: f64, trial_seed: u64) -> Result<Self> {
        let x = gen_signal(n, seed::derive_seed(trial_seed, &[stream::SIGNAL]))?;
        let a = gen_sensing(m, n, seed::derive_seed(trial_seed, &[stream::SENSING]))?;
        let clean = observe(&a, &x)?;
        let obs = add_noise(
            &clean,
            noise_level,
            seed::derive_seed(trial_seed, &[stream::NOISE]),
        )?;
        Ok(Self { x, a, obs })
    }

    /// Writes the instance in the `SAFD` binary layout.
    ///
    /// Layout (all little-endian):
    ///
    /// | offset | size | content                          |
    /// |--------|------|----------------------------------|
    /// | 0      | 4    | magic `b"SAFD"`                  |
    /// | 4      | 4    | `m` as u32                       |
    /// | 8      | 4    | `n` as u32                       |
    /// | 12     | 1    | field: 0 = real, 1 = complex     |
    /// | 13     | 3    | zero padding                     |
    /// | 16     | ...  | `x` (n scalars), `A` (m·n scalars, row-major), `y` (m f64) |
    ///
    /// Complex scalars are stored as interleaved `(re, im)` f64 pairs.
    pub fn write_dump<W: Write>(&self, mut w: W) -> Result<()> {
        let m = u32::try_from(self.a.m()).map_err(|_| invalid("m exceeds u32"))?;
        let n = u32::try_from(self.a.n()).map_err(|_| invalid("n exceeds u32"))?;
        let mut header = [0u8; 16];
        header[..4].copy_from_slice(DUMP_MAGIC);
        header[4..8].copy_from_slice(&m.to_le_bytes());
        header[8..12].copy_from_slice(&n.to_le_bytes());
        header[12] = T::TAG.code();
        w.write_all(&header)?;

        let mut words = Vec::with_capacity((self.a.as_slice().len() + self.x.len()) * T::WORDS);
        for &v in self.x.as_slice().iter().chain(self.a.as_slice()) {
            v.push_words(&mut words);
        }
        words.extend_from_slice(&self.obs.y);
        for v in words {
            w.write_all(&v.to_le_bytes())?;
        }
        Ok(())
    }

    /// Reads an instance written by [`Instance::write_dump`]. The noise
    /// level is not part of the layout and is reported as zero.
    pub fn read_dump<R: Read>(mut r: R) -> Result<Self> {
        let mut header = [0u8; 16];
        r.read_exact(&mut header)?;
        if &header[..4] != DUMP_MAGIC {
            return Err(Error::Format("bad magic".into()));
        }
        let m = u32::from_le_bytes(header[4..8].try_into().unwrap()) as usize;
        let n = u32::from_le_bytes(header[8..12].try_into().unwrap()) as usize;
        let field = FieldTag::from_code(header[12])
            .ok_or_else(|| Error::Format(format!("unknown field code {}", header[12])))?;
        if field != T::TAG {
            return Err(Error::Format(format!(
                "dump holds {field} data, requested {}",
                T::TAG
            )));
        }
        let mut bytes = Vec::new();
        r.read_to_end(&mut bytes)?;
        let expected = ((n + m * n) * T::WORDS + m) * 8;
        if bytes.len() != expected {
            return Err(Error::Format(format!(
                "payload is {} bytes, expected {expected}",
                bytes.len()
            )));
        }
        let words: Vec<f64> = bytes
            .chunks_exact(8)
            .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
            .collect();
        let scalars = |range: std::ops::Range<usize>| -> Vec<T> {
            words[range].chunks_exact(T::WORDS).map(T::from_words).collect()
        };
        let x_end = n * T::WORDS;
        let a_end = x_end + m * n * T::WORDS;
        Ok(Self {
            x: Signal::new(scalars(0..x_end))?,
            a: MeasurementSet::from_rows(m, n, scalars(x_end..a_end))?,
            obs: Observations {
                y: words[a_end..].to_vec(),
                noise_level: 0.0,
            },
        })
    }
}

pub const DUMP_MAGIC: &[u8; 4] = b"SAFD";
