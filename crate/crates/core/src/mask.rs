//! Binary label masks on a regular voxel grid with physical spacing.
//!
//! Masks are stored in the project's own container format: a single-line
//! JSON header `{"dims":[nx,ny,nz],"spacing":[sx,sy,sz],"encoding":"raw8"}`
//! followed by a newline and `nx*ny*nz` payload bytes in x-fastest order
//! (0 = background, nonzero = foreground). Alternatively the header may
//! carry a `"data"` field naming a sibling file that holds the payload.

use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A binary voxel mask with grid dimensions and physical spacing in mm.
///
/// 2D masks are encoded with `nz = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct LabelMask {
    dims: [usize; 3],
    spacing: [f64; 3],
    data: Vec<u8>,
}

#[derive(Serialize, Deserialize)]
struct MaskHeader {
    dims: [usize; 3],
    spacing: [f64; 3],
    encoding: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    data: Option<String>,
}

fn validate_geometry(dims: [usize; 3], spacing: [f64; 3]) -> Result<()> {
    if dims.contains(&0) {
        return Err(Error::InvalidInput(format!(
            "mask dimensions must all be >= 1, got {dims:?}"
        )));
    }
    if spacing.iter().any(|s| !s.is_finite() || *s <= 0.0) {
        return Err(Error::InvalidInput(format!(
            "mask spacing must be strictly positive and finite, got {spacing:?}"
        )));
    }
    Ok(())
}

impl LabelMask {
    /// Creates an all-background mask.
    pub fn new(dims: [usize; 3], spacing: [f64; 3]) -> Result<Self> {
        validate_geometry(dims, spacing)?;
        Ok(Self {
            data: vec![0; dims[0] * dims[1] * dims[2]],
            dims,
            spacing,
        })
    }

    /// Creates a mask from an explicit foreground voxel set.
    ///
    /// Every coordinate must lie within `[0, dim)` per axis.
    pub fn from_foreground<I>(dims: [usize; 3], spacing: [f64; 3], foreground: I) -> Result<Self>
    where
        I: IntoIterator<Item = [usize; 3]>,
    {
        let mut mask = Self::new(dims, spacing)?;
        for v in foreground {
            mask.set(v, true)?;
        }
        Ok(mask)
    }

    pub fn dims(&self) -> [usize; 3] {
        self.dims
    }

    pub fn spacing(&self) -> [f64; 3] {
        self.spacing
    }

    #[inline]
    fn index(&self, [x, y, z]: [usize; 3]) -> usize {
        x + self.dims[0] * (y + self.dims[1] * z)
    }

    fn check_bounds(&self, v: [usize; 3]) -> Result<()> {
        if v[0] >= self.dims[0] || v[1] >= self.dims[1] || v[2] >= self.dims[2] {
            return Err(Error::InvalidInput(format!(
                "voxel {v:?} outside grid {:?}",
                self.dims
            )));
        }
        Ok(())
    }

    pub fn set(&mut self, v: [usize; 3], foreground: bool) -> Result<()> {
        self.check_bounds(v)?;
        let i = self.index(v);
        self.data[i] = u8::from(foreground);
        Ok(())
    }

    /// True when the voxel is foreground; out-of-grid coordinates are background.
    #[inline]
    pub fn is_foreground(&self, v: [usize; 3]) -> bool {
        v[0] < self.dims[0]
            && v[1] < self.dims[1]
            && v[2] < self.dims[2]
            && self.data[self.index(v)] != 0
    }

    pub fn foreground_count(&self) -> usize {
        self.data.iter().filter(|&&b| b != 0).count()
    }

    pub fn is_empty(&self) -> bool {
        self.data.iter().all(|&b| b == 0)
    }

    /// Foreground voxel coordinates, x-fastest order.
    pub fn foreground(&self) -> Vec<[usize; 3]> {
        let mut out = Vec::new();
        let [nx, ny, nz] = self.dims;
        for z in 0..nz {
            for y in 0..ny {
                for x in 0..nx {
                    if self.data[self.index([x, y, z])] != 0 {
                        out.push([x, y, z]);
                    }
                }
            }
        }
        out
    }

    /// Parses a mask from raw container bytes (inline payload layout only).
    pub fn from_container_bytes(bytes: &[u8]) -> Result<Self> {
        let newline = bytes
            .iter()
            .position(|&b| b == b'\n')
            .ok_or_else(|| Error::Parse("mask container: missing header line".into()))?;
        let header: MaskHeader = serde_json::from_slice(&bytes[..newline])
            .map_err(|e| Error::Parse(format!("mask container header: {e}")))?;
        if header.data.is_some() {
            return Err(Error::Parse(
                "mask container: sibling-payload header passed as inline bytes".into(),
            ));
        }
        Self::assemble(header, bytes[newline + 1..].to_vec())
    }

    /// Reads a mask container file, following a `"data"` sibling reference if present.
    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let mut bytes = Vec::new();
        std::fs::File::open(path)?.read_to_end(&mut bytes)?;
        let newline = bytes
            .iter()
            .position(|&b| b == b'\n')
            .unwrap_or(bytes.len());
        let header: MaskHeader = serde_json::from_slice(&bytes[..newline])
            .map_err(|e| Error::Parse(format!("{}: mask header: {e}", path.display())))?;
        let payload = match &header.data {
            Some(sibling) => {
                let dir = path.parent().unwrap_or_else(|| Path::new("."));
                std::fs::read(dir.join(sibling))?
            }
            None => {
                if newline >= bytes.len() {
                    return Err(Error::Parse(format!(
                        "{}: mask container: missing payload",
                        path.display()
                    )));
                }
                bytes[newline + 1..].to_vec()
            }
        };
        Self::assemble(header, payload)
    }

    fn assemble(header: MaskHeader, payload: Vec<u8>) -> Result<Self> {
        if header.encoding != "raw8" {
            return Err(Error::Parse(format!(
                "mask container: unsupported encoding {:?}",
                header.encoding
            )));
        }
        validate_geometry(header.dims, header.spacing)?;
        let expected = header.dims[0] * header.dims[1] * header.dims[2];
        if payload.len() != expected {
            return Err(Error::Parse(format!(
                "mask container: payload holds {} bytes, dims {:?} require {}",
                payload.len(),
                header.dims,
                expected
            )));
        }
        Ok(Self {
            dims: header.dims,
            spacing: header.spacing,
            data: payload,
        })
    }

    /// Serializes to the single-file container layout (header line + payload).
    ///
    /// Foreground bytes are normalized to 1.
    pub fn to_container_bytes(&self) -> Vec<u8> {
        let header = MaskHeader {
            dims: self.dims,
            spacing: self.spacing,
            encoding: "raw8".into(),
            data: None,
        };
        let mut out = serde_json::to_vec(&header).expect("mask header serializes");
        out.push(b'\n');
        out.extend(self.data.iter().map(|&b| u8::from(b != 0)));
        out
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut f = std::fs::File::create(path)?;
        f.write_all(&self.to_container_bytes())?;
        Ok(())
    }
}
