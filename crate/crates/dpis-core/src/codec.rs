//! Whole-image embedding, extraction, and capacity scanning.
//!
//! The payload is a 32-bit big-endian byte-length header followed by the
//! message bytes, all consumed MSB-first. Pixels are visited in row-major
//! order; the key's indicator sequence advances once per pixel whether or
//! not the pixel carries data, so the schedule never depends on the image
//! content. The final payload chunk is zero-padded on the right; the length
//! header makes the padding inert.

use crate::bits::{lsb, read_low_bits, set_lsb, write_low_bits, BitCursor};
use crate::error::{Error, Result};
use crate::key::StegoKey;
use crate::pixel::{Channel, ImageBuffer};
use crate::plan::{is_skipped, plan_pixel, PixelPlan};

/// Bits occupied by the payload length header.
pub const HEADER_BITS: u64 = 32;

/// The 32-bit big-endian byte-length header that precedes the message bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PayloadHeader {
    pub message_length: u32,
}

impl PayloadHeader {
    pub fn for_message(message: &[u8]) -> Result<PayloadHeader> {
        let message_length = u32::try_from(message.len()).map_err(|_| {
            Error::InvalidArgument(format!("message of {} bytes exceeds the 32-bit header", message.len()))
        })?;
        Ok(PayloadHeader { message_length })
    }

    pub fn to_be_bytes(self) -> [u8; 4] {
        self.message_length.to_be_bytes()
    }
}

/// Pixel-utilization and capacity figures for one image/key/scheme combination.
#[derive(Debug, Clone, PartialEq)]
pub struct CapacityReport {
    pub total_pixels: u64,
    /// Pixels that carried (or, for a dry-run scan, could carry) payload bits.
    pub utilized_pixels: u64,
    /// Pixels the scheme refused to touch.
    pub skipped_pixels: u64,
    /// Payload bits available across the whole image.
    pub capacity_bits: u64,
    /// Bits consumed by header + message; zero for a dry-run scan.
    pub used_bits: u64,
    /// utilized_pixels / total_pixels * 100.
    pub utilization_percent: f64,
}

impl CapacityReport {
    pub(crate) fn new(total: u64, utilized: u64, skipped: u64, capacity_bits: u64, used_bits: u64) -> CapacityReport {
        CapacityReport {
            total_pixels: total,
            utilized_pixels: utilized,
            skipped_pixels: skipped,
            capacity_bits,
            used_bits,
            utilization_percent: utilized as f64 / total as f64 * 100.0,
        }
    }

    /// Largest whole-byte message the scanned capacity can hold.
    pub fn max_message_bytes(&self) -> u64 {
        self.capacity_bits.saturating_sub(HEADER_BITS) / 8
    }
}

/// Result of a successful embedding.
#[derive(Debug, Clone)]
pub struct EmbedOutcome {
    pub stego: ImageBuffer,
    /// Positions of pixels skipped before the payload ended, in visit order.
    /// These pixels are byte-identical to the cover and feed tamper detection.
    pub skipped_positions: Vec<(u32, u32)>,
    pub report: CapacityReport,
}

/// Dry-run over the whole image: how much payload would fit under this key.
pub fn capacity_scan(image: &ImageBuffer, key: &StegoKey) -> CapacityReport {
    let mut utilized = 0u64;
    let mut skipped = 0u64;
    let mut capacity_bits = 0u64;
    for (i, &pixel) in image.pixels().iter().enumerate() {
        match plan_pixel(pixel, key.channel_at(i), key.threshold()) {
            PixelPlan::Skip => skipped += 1,
            PixelPlan::Embed { bit_count, .. } => {
                utilized += 1;
                capacity_bits += u64::from(bit_count);
            }
        }
    }
    CapacityReport::new(image.pixel_count() as u64, utilized, skipped, capacity_bits, 0)
}

/// Embeds `message` into a copy of `cover` under `key`.
///
/// Fails with [`Error::Capacity`] when the 32-bit header plus the message
/// does not fit. On success, pixels after the payload's last bit are
/// byte-identical to the cover, as are all skipped pixels.
pub fn embed(cover: &ImageBuffer, key: &StegoKey, message: &[u8]) -> Result<EmbedOutcome> {
    let header = PayloadHeader::for_message(message)?;
    let mut payload = Vec::with_capacity(4 + message.len());
    payload.extend_from_slice(&header.to_be_bytes());
    payload.extend_from_slice(message);
    let used_bits = payload.len() as u64 * 8;
    let mut cursor = BitCursor::from_bytes(payload);

    let mut stego = cover.clone();
    let mut skipped_positions = Vec::new();
    let mut utilized = 0u64;
    let mut capacity_bits = 0u64;

    for i in 0..stego.pixel_count() {
        let indicator = key.channel_at(i);
        let plan = plan_pixel(stego.pixels()[i], indicator, key.threshold());
        match plan {
            PixelPlan::Skip => {
                if !cursor.is_exhausted() {
                    let (x, y) = stego.coords(i);
                    skipped_positions.push((x, y));
                }
            }
            PixelPlan::Embed {
                data_channel,
                flag_channel,
                bit_count,
                indicator_lsb,
                flag_lsb,
            } => {
                capacity_bits += u64::from(bit_count);
                if !cursor.is_exhausted() {
                    let chunk = cursor.read_bits_padded(bit_count) as u8;
                    let pixel = &mut stego.pixels_mut()[i];
                    pixel[indicator] = set_lsb(pixel[indicator], indicator_lsb);
                    pixel[flag_channel] = set_lsb(pixel[flag_channel], flag_lsb);
                    pixel[data_channel] = write_low_bits(pixel[data_channel], bit_count, chunk);
                    utilized += 1;
                }
            }
        }
    }

    if !cursor.is_exhausted() {
        return Err(Error::Capacity {
            needed: used_bits,
            available: capacity_bits,
        });
    }

    let skipped = skipped_positions.len() as u64;
    let report = CapacityReport::new(cover.pixel_count() as u64, utilized, skipped, capacity_bits, used_bits);
    Ok(EmbedOutcome {
        stego,
        skipped_positions,
        report,
    })
}

/// How many payload bits each non-skipped pixel yields during recovery.
#[derive(Debug, Clone, Copy)]
pub(crate) enum BitRule {
    /// Read the flag channel's LSB: 0 means three bits, 1 means four.
    FlagLsb,
    /// Always read this many bits, ignoring the flag channel.
    Fixed(u8),
}

/// Walks the image with the given indicator schedule, collecting payload bits
/// until `done` says to stop or the pixels run out.
///
/// The skip rule is replayed from masked values when `honor_skips` is set;
/// the data channel is always identified from the indicator's LSB (0 means
/// successor, 1 means predecessor).
pub(crate) fn recover_bits<F, D>(
    stego: &ImageBuffer,
    indicator_at: F,
    honor_skips: bool,
    rule: BitRule,
    mut done: D,
) -> BitCursor
where
    F: Fn(usize) -> Channel,
    D: FnMut(&BitCursor) -> bool,
{
    let mut collected = BitCursor::new();
    for (i, &pixel) in stego.pixels().iter().enumerate() {
        let indicator = indicator_at(i);
        if honor_skips && is_skipped(pixel, indicator) {
            continue;
        }
        let data_channel = if lsb(pixel[indicator]) == 0 {
            indicator.succ()
        } else {
            indicator.pred()
        };
        let flag_channel = indicator.remaining(data_channel);
        let bit_count = match rule {
            BitRule::FlagLsb => {
                if lsb(pixel[flag_channel]) == 0 {
                    3
                } else {
                    4
                }
            }
            BitRule::Fixed(k) => k,
        };
        collected.write_bits(u32::from(read_low_bits(pixel[data_channel], bit_count)), bit_count);
        if done(&collected) {
            break;
        }
    }
    collected
}

/// Recovers the embedded message from a stego image.
///
/// Total over arbitrary input: a wrong key, a tampered image, or a cover that
/// never carried data yields either garbage bytes or
/// [`Error::MalformedPayload`], never a panic.
pub fn extract(stego: &ImageBuffer, key: &StegoKey) -> Result<Vec<u8>> {
    // No image can yield more than 4 bits per pixel.
    let recoverable_ceiling = stego.pixel_count() as u64 * 4;
    let mut needed: Option<u64> = None;

    let collected = recover_bits(
        stego,
        |i| key.channel_at(i),
        true,
        BitRule::FlagLsb,
        |bits| {
            if needed.is_none() && bits.position() as u64 >= HEADER_BITS {
                let mut header = BitCursor::from_bytes(bits.bytes()[..4].to_vec());
                let length = header.read_bits(32).unwrap() as u64;
                needed = Some(HEADER_BITS + 8 * length);
            }
            match needed {
                // A declared length beyond the whole image cannot complete.
                Some(n) => bits.position() as u64 >= n || n > recoverable_ceiling,
                None => false,
            }
        },
    );

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
