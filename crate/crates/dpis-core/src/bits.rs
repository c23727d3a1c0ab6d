//! Low-level bit operations on channel bytes and the MSB-first bit cursor.
//!
//! Every per-pixel decision in this crate is made on the high nibble of a
//! channel value. Embedding only ever rewrites a channel's low four bits, so
//! masking with [`masked`] gives a view of the pixel that is identical before
//! and after embedding. That is what lets the extractor replay the embedder's
//! decisions without any side information beyond the key.

/// Clears the low four bits: the embedding-invariant view of a channel value.
pub fn masked(v: u8) -> u8 {
    v & 0xF0
}

/// Reads bit 0.
pub fn lsb(v: u8) -> u8 {
    v & 1
}

/// Replaces bit 0, leaving all other bits untouched.
///
/// Panics if `bit` is not 0 or 1.
pub fn set_lsb(v: u8, bit: u8) -> u8 {
    assert!(bit <= 1, "lsb must be 0 or 1, got {bit}");
    (v & !1) | bit
}

/// Replaces the low `k` bits of `v` with `bits`, leaving bits `k..8` untouched.
///
/// Panics unless `1 <= k <= 8` and `bits < 2^k`.
pub fn write_low_bits(v: u8, k: u8, bits: u8) -> u8 {
    assert!((1..=8).contains(&k), "bit count must be in 1..=8, got {k}");
    let mask = low_mask(k);
    assert!(bits <= mask, "value {bits:#b} does not fit in {k} bits");
    (v & !mask) | bits
}

/// Reads the low `k` bits of `v`.
///
/// Panics unless `1 <= k <= 8`.
pub fn read_low_bits(v: u8, k: u8) -> u8 {
    assert!((1..=8).contains(&k), "bit count must be in 1..=8, got {k}");
    v & low_mask(k)
}

fn low_mask(k: u8) -> u8 {
    if k == 8 {
        0xFF
    } else {
        (1u8 << k) - 1
    }
}

/// A seekable MSB-first bit cursor over a byte buffer.
///
/// Bit position 0 is bit 7 of byte 0. Reads and writes share one position;
/// writes past the end grow the buffer. Used both as the payload reader
/// during embedding and as the bit collector during extraction.
#[derive(Debug, Clone, Default)]
pub struct BitCursor {
    bytes: Vec<u8>,
    pos: usize,
}

impl BitCursor {
    pub fn new() -> BitCursor {
        BitCursor::default()
    }

    pub fn from_bytes(bytes: Vec<u8>) -> BitCursor {
        BitCursor { bytes, pos: 0 }
    }

    pub fn bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.bytes
    }

    /// Total bits stored in the buffer.
    pub fn bit_len(&self) -> usize {
        self.bytes.len() * 8
    }

    /// Current bit position.
    pub fn position(&self) -> usize {
        self.pos
    }

    /// Bits left between the position and the end of the buffer.
    pub fn remaining(&self) -> usize {
        self.bit_len().saturating_sub(self.pos)
    }

    pub fn is_exhausted(&self) -> bool {
        self.remaining() == 0
    }

    /// Moves the position; may not point past the end of the buffer.
    pub fn seek(&mut self, bit_pos: usize) {
        assert!(bit_pos <= self.bit_len(), "seek past end of buffer");
        self.pos = bit_pos;
    }

    pub fn read_bit(&mut self) -> Option<u8> {
        if self.pos >= self.bit_len() {
            return None;
        }
        let byte = self.bytes[self.pos / 8];
        let bit = (byte >> (7 - (self.pos % 8))) & 1;
        self.pos += 1;
        Some(bit)
    }

    /// Reads `k <= 32` bits MSB-first; `None` if fewer than `k` remain.
    pub fn read_bits(&mut self, k: u8) -> Option<u32> {
        assert!(k <= 32);
        if self.remaining() < k as usize {
            return None;
        }
        let mut out = 0u32;
        for _ in 0..k {
            out = (out << 1) | u32::from(self.read_bit().unwrap());
        }
        Some(out)
    }

    /// Reads `k <= 32` bits, zero-padding on the right when the buffer ends
    /// mid-read. Used for the final partial chunk of a payload.
    pub fn read_bits_padded(&mut self, k: u8) -> u32 {
        assert!(k <= 32);
        let mut out = 0u32;
        for _ in 0..k {
            out = (out << 1) | u32::from(self.read_bit().unwrap_or(0));
        }
        out
    }

    pub fn write_bit(&mut self, bit: u8) {
        assert!(bit <= 1, "bit must be 0 or 1, got {bit}");
        if self.pos / 8 == self.bytes.len() {
            self.bytes.push(0);
        }
        let idx = self.pos / 8;
        let shift = 7 - (self.pos % 8);
        self.bytes[idx] = (self.bytes[idx] & !(1 << shift)) | (bit << shift);
        self.pos += 1;
    }

    /// Writes the low `k <= 32` bits of `value`, MSB-first.
    pub fn write_bits(&mut self, value: u32, k: u8) {
        assert!(k <= 32);
        for i in (0..k).rev() {
            self.write_bit(((value >> i) & 1) as u8);
        }
    }
}
