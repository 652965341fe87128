//! Serialization of eigen-decompositions.
//!
//! Two layouts: a CSV table with a single JSON header comment (easy to plot),
//! and a full JSON document that can optionally carry the eigenvectors.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::ModelParams;
use crate::spectrum::eigen::EigenDecomposition;

#[derive(Debug, Clone, Serialize, Deserialize)]
struct Header {
    params: ModelParams,
    n_max: usize,
    dimension: usize,
}

/// Full JSON export of a decomposition.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectrumExport {
    pub params: ModelParams,
    pub n_max: usize,
    pub dimension: usize,
    pub energies: Vec<f64>,
    pub scaled_energies: Vec<f64>,
    pub block_labels: Option<Vec<i8>>,
    /// Eigenvectors by state index, each in basis coordinates.
    pub vectors: Option<Vec<Vec<f64>>>,
}

impl SpectrumExport {
    pub fn from_decomposition(eigs: &EigenDecomposition, include_vectors: bool) -> Self {
        let vectors = include_vectors.then(|| {
            (0..eigs.dimension())
                .map(|i| eigs.vectors.column(i).iter().copied().collect())
                .collect()
        });
        Self {
            params: eigs.params.clone(),
            n_max: eigs.n_max,
            dimension: eigs.dimension(),
            energies: eigs.energies.clone(),
            scaled_energies: eigs.scaled_energies(),
            block_labels: eigs.block_labels.clone(),
            vectors,
        }
    }
}

fn header(eigs: &EigenDecomposition) -> Result<String> {
    let header = Header {
        params: eigs.params.clone(),
        n_max: eigs.n_max,
        dimension: eigs.dimension(),
    };
    serde_json::to_string(&header).map_err(|e| Error::Protocol(e.to_string()))
}

/// Writes `index,energy,scaled_energy,parity` rows under a `# {json}` header.
/// The parity column is empty when the solve was not blocked.
pub fn export_csv(eigs: &EigenDecomposition, writer: &mut impl Write) -> Result<()> {
    writeln!(writer, "# {}", header(eigs)?)?;
    writeln!(writer, "index,energy,scaled_energy,parity")?;
    let scaled = eigs.scaled_energies();
    for i in 0..eigs.dimension() {
        let parity = match &eigs.block_labels {
            Some(labels) => labels[i].to_string(),
            None => String::new(),
        };
        writeln!(writer, "{},{:.15e},{:.15e},{}", i, eigs.energies[i], scaled[i], parity)?;
    }
    Ok(())
}

/// Writes the full JSON document, with eigenvectors when requested.
pub fn export_json(
    eigs: &EigenDecomposition,
    writer: &mut impl Write,
    include_vectors: bool,
) -> Result<()> {
    let doc = SpectrumExport::from_decomposition(eigs, include_vectors);
    serde_json::to_writer(&mut *writer, &doc).map_err(|e| Error::Protocol(e.to_string()))?;
    writeln!(writer)?;
    Ok(())
}
