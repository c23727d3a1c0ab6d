//! Tamper detection via skipped-pixel manifests.
//!
//! Embedding leaves skipped pixels byte-identical to the cover. A manifest
//! records a seeded sample of those positions together with their exact RGB
//! values; the receiver checks them before extracting. Any change to a
//! tracked pixel is reported with its position. Changes to untracked pixels
//! go unnoticed — that is the sampling trade-off; pass a sample size of
//! `usize::MAX` to track every skipped pixel.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::pixel::{ImageBuffer, Pixel};

/// Current manifest format version, matching the `DPISMANIFEST v1` magic.
pub const MANIFEST_VERSION: u32 = 1;

/// Default number of skipped pixels to track.
pub const DEFAULT_SAMPLE_SIZE: usize = 64;

/// One tracked pixel: its position and the exact value it must still hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ManifestEntry {
    pub x: u32,
    pub y: u32,
    pub pixel: Pixel,
}

/// A sample of untouched pixel positions and values for one stego image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegrityManifest {
    pub version: u32,
    pub width: u32,
    pub height: u32,
    pub entries: Vec<ManifestEntry>,
    /// Seed the sample was drawn with; not part of the serialized form.
    pub sample_seed: u64,
}

/// Verification verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerifyOutcome {
    Intact,
    /// Every tracked position whose pixel no longer matches.
    Tampered(Vec<(u32, u32)>),
}

/// Samples up to `sample_size` of the skipped positions (deterministically
/// for a given seed) and records their current values from the stego image.
/// Entries are stored in row-major order.
pub fn build_manifest(
    stego: &ImageBuffer,
    skipped_positions: &[(u32, u32)],
    sample_size: usize,
    seed: u64,
) -> Result<IntegrityManifest> {
    let mut positions: Vec<(u32, u32)> = skipped_positions.to_vec();
    positions.sort_by_key(|&(x, y)| (y, x));
    positions.dedup();
    for &(x, y) in &positions {
        if !stego.in_bounds(x, y) {
            return Err(Error::InvalidArgument(format!(
                "skipped position ({x}, {y}) outside {}x{} image",
                stego.width(),
                stego.height()
            )));
        }
    }

    let take = sample_size.min(positions.len());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut chosen = rand::seq::index::sample(&mut rng, positions.len(), take).into_vec();
    chosen.sort_unstable();

    let entries = chosen
        .into_iter()
        .map(|i| {
            let (x, y) = positions[i];
            ManifestEntry { x, y, pixel: stego.pixel(x, y) }
        })
        .collect();

    Ok(IntegrityManifest {
        version: MANIFEST_VERSION,
        width: stego.width(),
        height: stego.height(),
        entries,
        sample_seed: seed,
    })
}

/// Checks every tracked pixel against the image. Returns
/// [`VerifyOutcome::Tampered`] listing each mismatching position, or an error
/// when the image geometry does not match the manifest.
pub fn verify_manifest(image: &ImageBuffer, manifest: &IntegrityManifest) -> Result<VerifyOutcome> {
    if image.width() != manifest.width || image.height() != manifest.height {
        return Err(Error::DimensionMismatch(format!(
            "manifest describes a {}x{} image, got {}x{}",
            manifest.width,
            manifest.height,
            image.width(),
            image.height()
        )));
    }
    let mismatches: Vec<(u32, u32)> = manifest
        .entries
        .iter()
        .filter(|e| image.pixel(e.x, e.y) != e.pixel)
        .map(|e| (e.x, e.y))
        .collect();
    if mismatches.is_empty() {
        Ok(VerifyOutcome::Intact)
    } else {
        Ok(VerifyOutcome::Tampered(mismatches))
    }
}
