use crate::error::{Error, Result};

/// Family of subsets: the groups of genotype variables that are varied jointly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fos {
    elements: Vec<Vec<usize>>,
    len: usize,
}

/// How to build a [`Fos`] for a genotype of a given length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FosKind {
    /// One element per variable.
    Univariate,
    /// A single element holding every variable.
    Full,
    /// Consecutive blocks of the given sizes; the sizes must add up to the genotype length.
    Blocks(Vec<usize>),
    Custom(Vec<Vec<usize>>),
}

impl Fos {
    pub fn univariate(len: usize) -> Self {
        Self {
            elements: (0..len).map(|i| vec![i]).collect(),
            len,
        }
    }

    pub fn full(len: usize) -> Self {
        Self {
            elements: vec![(0..len).collect()],
            len,
        }
    }

    pub fn blocks(sizes: &[usize]) -> Result<Self> {
        let mut start = 0;
        let mut elements = Vec::with_capacity(sizes.len());
        for &s in sizes {
            elements.push((start..start + s).collect());
            start += s;
        }
        Self::custom(elements, start)
    }

    /// Validates that every element is non-empty, in range, and that together they cover
    /// all `len` variables.
    pub fn custom(elements: Vec<Vec<usize>>, len: usize) -> Result<Self> {
        if len == 0 {
            return Err(Error::InvalidConfig("FOS over an empty genotype".into()));
        }
        let mut covered = vec![false; len];
        for e in &elements {
            if e.is_empty() {
                return Err(Error::InvalidConfig("empty FOS element".into()));
            }
            for &i in e {
                if i >= len {
                    return Err(Error::InvalidConfig(format!(
                        "FOS index {i} out of range for genotype length {len}"
                    )));
                }
                covered[i] = true;
            }
        }
        if let Some(i) = covered.iter().position(|c| !c) {
            return Err(Error::InvalidConfig(format!(
                "FOS does not cover variable {i}"
            )));
        }
        Ok(Self { elements, len })
    }

    pub fn build(kind: &FosKind, len: usize) -> Result<Self> {
        match kind {
            FosKind::Univariate => Ok(Self::univariate(len)),
            FosKind::Full => Ok(Self::full(len)),
            FosKind::Blocks(sizes) => {
                let fos = Self::blocks(sizes)?;
                if fos.len != len {
                    return Err(Error::InvalidConfig(format!(
                        "FOS blocks cover {} variables, genotype has {len}",
                        fos.len
                    )));
                }
                Ok(fos)
            }
            FosKind::Custom(elements) => Self::custom(elements.clone(), len),
        }
    }

    pub fn elements(&self) -> &[Vec<usize>] {
        &self.elements
    }

    pub fn genotype_len(&self) -> usize {
        self.len
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}
