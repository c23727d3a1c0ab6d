//! Per-pixel embedding decisions.
//!
//! For each pixel the key schedule names one channel the *indicator*. The
//! decision procedure, working entirely on high-nibble [`masked`] values so
//! that it replays identically on the stego image:
//!
//! 1. If the indicator's masked value is strictly below both other channels,
//!    the pixel is skipped and left byte-identical.
//! 2. Otherwise the *data channel* is the non-indicator channel with the
//!    smaller masked value (tie goes to the indicator's successor), and the
//!    last remaining channel is the *flag channel*.
//! 3. Four payload bits go into the data channel if its masked value is below
//!    the key threshold, otherwise three.
//! 4. The indicator's LSB is set to 0 when the data channel is the cyclic
//!    successor of the indicator and 1 when it is the predecessor; the flag
//!    channel's LSB is set to 0 for three bits and 1 for four.

use crate::bits::masked;
use crate::pixel::{Channel, Pixel};

/// The decision for one pixel: leave it untouched, or embed into it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PixelPlan {
    Skip,
    Embed {
        data_channel: Channel,
        flag_channel: Channel,
        /// 3 or 4.
        bit_count: u8,
        /// Written to bit 0 of the indicator channel.
        indicator_lsb: u8,
        /// Written to bit 0 of the flag channel.
        flag_lsb: u8,
    },
}

impl PixelPlan {
    pub fn is_skip(&self) -> bool {
        matches!(self, PixelPlan::Skip)
    }
}

/// True when the pixel is skipped: the indicator's masked value is strictly
/// the lowest of the three. Ties embed.
pub fn is_skipped(pixel: Pixel, indicator: Channel) -> bool {
    let ind = masked(pixel[indicator]);
    ind < masked(pixel[indicator.succ()]) && ind < masked(pixel[indicator.pred()])
}

/// Computes the embedding decision for one pixel.
///
/// Depends only on masked channel values, so calling it on the cover pixel
/// and on the corresponding stego pixel yields the same plan.
pub fn plan_pixel(pixel: Pixel, indicator: Channel, threshold: u8) -> PixelPlan {
    if is_skipped(pixel, indicator) {
        return PixelPlan::Skip;
    }

    let succ = indicator.succ();
    let pred = indicator.pred();
    // Lower masked value carries the data; ties resolve to the successor.
    let (data_channel, indicator_lsb) = if masked(pixel[pred]) < masked(pixel[succ]) {
        (pred, 1)
    } else {
        (succ, 0)
    };
    let flag_channel = indicator.remaining(data_channel);
    let bit_count = if masked(pixel[data_channel]) < threshold { 4 } else { 3 };
    let flag_lsb = if bit_count == 4 { 1 } else { 0 };

    PixelPlan::Embed {
        data_channel,
        flag_channel,
        bit_count,
        indicator_lsb,
        flag_lsb,
    }
}
