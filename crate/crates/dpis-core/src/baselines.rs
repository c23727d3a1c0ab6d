//! The two fixed-schedule comparison schemes.
//!
//! Both cycle the indicator channel R, G, B, ... by pixel index with no key,
//! and both carry the same 32-bit length header as the dynamic codec.
//!
//! * **Pixel Indicator**: the low two bits of the indicator value select
//!   which of the other two channels receive two payload bits each
//!   (00 neither, 01 the second, 10 the first, 11 both). The indicator is
//!   only ever read, never written.
//! * **Intensity variable-bits**: both non-indicator channels carry payload,
//!   with the bit count per channel looked up from a static partition schema
//!   over the channel's masked intensity — darker channels carry more bits.
//!   The schema here is a reconstructed stand-in, configurable per run.

use std::fmt;

use crate::bits::{read_low_bits, write_low_bits, BitCursor};
use crate::codec::{CapacityReport, PayloadHeader, HEADER_BITS};
use crate::error::{Error, Result};
use crate::pixel::{Channel, ImageBuffer};

/// One intensity band of a partition schema.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Band {
    pub low: u8,
    pub high: u8,
    pub bits: u8,
}

/// A static map from channel intensity to embedded bit count.
///
/// Bands must cover 0–255 without overlap, carry 1–4 bits each, and assign
/// weakly decreasing bit counts as intensity rises.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionSchema {
    bands: Vec<Band>,
}

impl PartitionSchema {
    pub fn new(mut bands: Vec<Band>) -> Result<PartitionSchema> {
        if bands.is_empty() {
            return Err(Error::InvalidArgument("partition schema has no bands".into()));
        }
        bands.sort_by_key(|b| b.low);
        let mut expected_low = 0u16;
        let mut prev_bits = u8::MAX;
        for band in &bands {
            if band.low > band.high {
                return Err(Error::InvalidArgument(format!(
                    "band {}-{} is inverted",
                    band.low, band.high
                )));
            }
            if u16::from(band.low) != expected_low {
                return Err(Error::InvalidArgument(format!(
                    "bands must cover 0-255 without gaps or overlap; expected a band starting at {expected_low}, got {}",
                    band.low
                )));
            }
            if !(1..=4).contains(&band.bits) {
                return Err(Error::InvalidArgument(format!(
                    "band {}-{} carries {} bits; allowed range is 1-4",
                    band.low, band.high, band.bits
                )));
            }
            if band.bits > prev_bits {
                return Err(Error::InvalidArgument(
                    "bit counts must not increase with intensity".into(),
                ));
            }
            prev_bits = band.bits;
            expected_low = u16::from(band.high) + 1;
        }
        if expected_low != 256 {
            return Err(Error::InvalidArgument("bands must cover intensities up to 255".into()));
        }
        Ok(PartitionSchema { bands })
    }

    /// The reconstructed default: 0-63 carry 4 bits, 64-127 carry 3, 128-255 carry 2.
    pub fn default_schema() -> PartitionSchema {
        PartitionSchema::new(vec![
            Band { low: 0, high: 63, bits: 4 },
            Band { low: 64, high: 127, bits: 3 },
            Band { low: 128, high: 255, bits: 2 },
        ])
        .unwrap()
    }

    pub fn bands(&self) -> &[Band] {
        &self.bands
    }

    pub fn max_bits(&self) -> u8 {
        self.bands.iter().map(|b| b.bits).max().unwrap()
    }

    /// Clears the low bits embedding may rewrite, so schema lookups are
    /// stable across embedding.
    pub fn mask(&self, v: u8) -> u8 {
        v & (0xFFu8 << self.max_bits())
    }

    /// Bit count for a channel, looked up on its masked intensity.
    pub fn bits_for(&self, channel_value: u8) -> u8 {
        let masked = self.mask(channel_value);
        self.bands
            .iter()
            .find(|b| b.low <= masked && masked <= b.high)
            .map(|b| b.bits)
            .unwrap()
    }

    /// Parses the textual form, e.g. `0-63:4,64-127:3,128-255:2`.
    pub fn parse(text: &str) -> Result<PartitionSchema> {
        let mut bands = Vec::new();
        for part in text.split(',') {
            let bad = || Error::InvalidArgument(format!("bad schema band '{part}', expected LOW-HIGH:BITS"));
            let (range, bits) = part.split_once(':').ok_or_else(bad)?;
            let (low, high) = range.split_once('-').ok_or_else(bad)?;
            bands.push(Band {
                low: low.trim().parse().map_err(|_| bad())?,
                high: high.trim().parse().map_err(|_| bad())?,
                bits: bits.trim().parse().map_err(|_| bad())?,
            });
        }
        PartitionSchema::new(bands)
    }
}

impl Default for PartitionSchema {
    fn default() -> Self {
        PartitionSchema::default_schema()
    }
}

impl fmt::Display for PartitionSchema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, band) in self.bands.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}-{}:{}", band.low, band.high, band.bits)?;
        }
        Ok(())
    }
}

/// Fixed R, G, B rotation shared by both baselines.
fn rotating_indicator(pixel_index: usize) -> Channel {
    Channel::ALL[pixel_index % 3]
}

/// How many bits the Pixel Indicator scheme writes into (channel1, channel2)
/// for a given indicator value. Channel1 is the indicator's cyclic successor,
/// channel2 the successor's successor.
fn pi_bit_split(indicator_value: u8) -> (u8, u8) {
    match indicator_value & 0b11 {
        0b00 => (0, 0),
        0b01 => (0, 2),
        0b10 => (2, 0),
        _ => (2, 2),
    }
}

/// Embeds under the Pixel Indicator scheme.
pub fn pi_embed(cover: &ImageBuffer, message: &[u8]) -> Result<(ImageBuffer, CapacityReport)> {
    let header = PayloadHeader::for_message(message)?;
    let mut payload = Vec::with_capacity(4 + message.len());
    payload.extend_from_slice(&header.to_be_bytes());
    payload.extend_from_slice(message);
    let used_bits = payload.len() as u64 * 8;
    let mut cursor = BitCursor::from_bytes(payload);

    let mut stego = cover.clone();
    let mut utilized = 0u64;
    let mut skipped = 0u64;
    let mut capacity_bits = 0u64;

    for i in 0..stego.pixel_count() {
        let indicator = rotating_indicator(i);
        let ch1 = indicator.succ();
        let ch2 = ch1.succ();
        let (bits1, bits2) = pi_bit_split(stego.pixels()[i][indicator]);
        capacity_bits += u64::from(bits1 + bits2);
        if cursor.is_exhausted() {
            continue;
        }
        if bits1 + bits2 == 0 {
            skipped += 1;
            continue;
        }
        let pixel = &mut stego.pixels_mut()[i];
        if bits1 > 0 {
            let chunk = cursor.read_bits_padded(bits1) as u8;
            pixel[ch1] = write_low_bits(pixel[ch1], bits1, chunk);
        }
        if bits2 > 0 {
            let chunk = cursor.read_bits_padded(bits2) as u8;
            pixel[ch2] = write_low_bits(pixel[ch2], bits2, chunk);
        }
        utilized += 1;
    }

    if !cursor.is_exhausted() {
        return Err(Error::Capacity {
            needed: used_bits,
            available: capacity_bits,
        });
    }
    let report = CapacityReport::new(cover.pixel_count() as u64, utilized, skipped, capacity_bits, used_bits);
    Ok((stego, report))
}

/// Extracts under the Pixel Indicator scheme.
pub fn pi_extract(stego: &ImageBuffer) -> Result<Vec<u8>> {
    extract_with(stego, |pixel_index, pixel| {
        let indicator = rotating_indicator(pixel_index);
        let ch1 = indicator.succ();
        let ch2 = ch1.succ();
        let (bits1, bits2) = pi_bit_split(pixel[indicator]);
        [(ch1, bits1), (ch2, bits2)]
    })
}

/// Embeds under the intensity variable-bits scheme.
pub fn ivb_embed(
    cover: &ImageBuffer,
    schema: &PartitionSchema,
    message: &[u8],
) -> Result<(ImageBuffer, CapacityReport)> {
    let header = PayloadHeader::for_message(message)?;
    let mut payload = Vec::with_capacity(4 + message.len());
    payload.extend_from_slice(&header.to_be_bytes());
    payload.extend_from_slice(message);
    let used_bits = payload.len() as u64 * 8;
    let mut cursor = BitCursor::from_bytes(payload);

    let mut stego = cover.clone();
    let mut utilized = 0u64;
    let mut capacity_bits = 0u64;

    for i in 0..stego.pixel_count() {
        let indicator = rotating_indicator(i);
        let ch1 = indicator.succ();
        let ch2 = ch1.succ();
        let bits1 = schema.bits_for(stego.pixels()[i][ch1]);
        let bits2 = schema.bits_for(stego.pixels()[i][ch2]);
        capacity_bits += u64::from(bits1 + bits2);
        if cursor.is_exhausted() {
            continue;
        }
        let pixel = &mut stego.pixels_mut()[i];
        let chunk = cursor.read_bits_padded(bits1) as u8;
        pixel[ch1] = write_low_bits(pixel[ch1], bits1, chunk);
        let chunk = cursor.read_bits_padded(bits2) as u8;
        pixel[ch2] = write_low_bits(pixel[ch2], bits2, chunk);
        utilized += 1;
    }

    if !cursor.is_exhausted() {
        return Err(Error::Capacity {
            needed: used_bits,
            available: capacity_bits,
        });
    }
    let report = CapacityReport::new(cover.pixel_count() as u64, utilized, 0, capacity_bits, used_bits);
    Ok((stego, report))
}

/// Extracts under the intensity variable-bits scheme.
pub fn ivb_extract(stego: &ImageBuffer, schema: &PartitionSchema) -> Result<Vec<u8>> {
    extract_with(stego, |pixel_index, pixel| {
        let indicator = rotating_indicator(pixel_index);
        let ch1 = indicator.succ();
        let ch2 = ch1.succ();
        [
            (ch1, schema.bits_for(pixel[ch1])),
            (ch2, schema.bits_for(pixel[ch2])),
        ]
    })
}

/// Shared header-driven extraction walk: `reads` names, per pixel, which
/// channels yield how many bits (zero meaning none).
fn extract_with<F>(stego: &ImageBuffer, reads: F) -> Result<Vec<u8>>
where
    F: Fn(usize, crate::pixel::Pixel) -> [(Channel, u8); 2],
{
    let mut collected = BitCursor::new();
    let mut needed: Option<u64> = None;
    let recoverable_ceiling = stego.pixel_count() as u64 * 8;

    'walk: for (i, &pixel) in stego.pixels().iter().enumerate() {
        for (channel, bits) in reads(i, pixel) {
            if bits > 0 {
                collected.write_bits(u32::from(read_low_bits(pixel[channel], bits)), bits);
            }
        }
        if needed.is_none() && collected.position() as u64 >= HEADER_BITS {
            let mut header = BitCursor::from_bytes(collected.bytes()[..4].to_vec());
            let length = header.read_bits(32).unwrap() as u64;
            needed = Some(HEADER_BITS + 8 * length);
        }
        if let Some(n) = needed {
            if collected.position() as u64 >= n || n > recoverable_ceiling {
                break 'walk;
            }
        }
    }

    let total_needed = needed.ok_or_else(|| {
        Error::MalformedPayload(format!(
            "image yielded only {} bits, not enough for the {HEADER_BITS}-bit header",
            collected.position()
        ))
    })?;
    if (collected.position() as u64) < total_needed {
        return Err(Error::MalformedPayload(format!(
            "payload declares {} bits but only {} were recoverable",
            total_needed,
            collected.position()
        )));
    }
    let message_len = ((total_needed - HEADER_BITS) / 8) as usize;
    Ok(collected.bytes()[4..4 + message_len].to_vec())
}
