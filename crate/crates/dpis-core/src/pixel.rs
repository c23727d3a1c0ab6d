//! RGB channels, pixels, and the in-memory image buffer.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};

/// One of the three color channels, in the fixed cyclic order R → G → B → R.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Channel {
    R = 0,
    G = 1,
    B = 2,
}

impl Channel {
    /// All channels in index order.
    pub const ALL: [Channel; 3] = [Channel::R, Channel::G, Channel::B];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(index: usize) -> Option<Channel> {
        Channel::ALL.get(index).copied()
    }

    /// Cyclic successor: R → G → B → R.
    pub fn succ(self) -> Channel {
        match self {
            Channel::R => Channel::G,
            Channel::G => Channel::B,
            Channel::B => Channel::R,
        }
    }

    /// Cyclic predecessor: R → B → G → R.
    pub fn pred(self) -> Channel {
        match self {
            Channel::R => Channel::B,
            Channel::G => Channel::R,
            Channel::B => Channel::G,
        }
    }

    /// The channel that is neither `self` nor `other`.
    ///
    /// Panics if the two are equal; every call site holds two distinct channels.
    pub fn remaining(self, other: Channel) -> Channel {
        assert_ne!(self, other, "no third channel for a pair of equal channels");
        Channel::ALL
            .into_iter()
            .find(|&c| c != self && c != other)
            .unwrap()
    }

    pub fn letter(self) -> char {
        match self {
            Channel::R => 'R',
            Channel::G => 'G',
            Channel::B => 'B',
        }
    }

    pub fn from_letter(ch: char) -> Option<Channel> {
        match ch {
            'R' => Some(Channel::R),
            'G' => Some(Channel::G),
            'B' => Some(Channel::B),
            _ => None,
        }
    }
}

impl fmt::Display for Channel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// An 8-bit-per-channel RGB pixel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pixel {
    pub r: u8,
    pub g: u8,
    pub b: u8,
}

impl Pixel {
    pub fn new(r: u8, g: u8, b: u8) -> Pixel {
        Pixel { r, g, b }
    }
}

impl Index<Channel> for Pixel {
    type Output = u8;

    fn index(&self, c: Channel) -> &u8 {
        match c {
            Channel::R => &self.r,
            Channel::G => &self.g,
            Channel::B => &self.b,
        }
    }
}

impl IndexMut<Channel> for Pixel {
    fn index_mut(&mut self, c: Channel) -> &mut u8 {
        match c {
            Channel::R => &mut self.r,
            Channel::G => &mut self.g,
            Channel::B => &mut self.b,
        }
    }
}

/// A row-major RGB image. Pixel (x, y) lives at index `y * width + x`;
/// embedding and extraction traverse pixels in that order starting at (0, 0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImageBuffer {
    width: u32,
    height: u32,
    pixels: Vec<Pixel>,
}

impl ImageBuffer {
    /// Creates a black image of the given size.
    pub fn new(width: u32, height: u32) -> Result<ImageBuffer> {
        Self::from_pixels(width, height, vec![Pixel::new(0, 0, 0); pixel_count(width, height)?])
    }

    /// Wraps an existing row-major pixel vector.
    pub fn from_pixels(width: u32, height: u32, pixels: Vec<Pixel>) -> Result<ImageBuffer> {
        let expected = pixel_count(width, height)?;
        if pixels.len() != expected {
            return Err(Error::InvalidArgument(format!(
                "pixel vector has {} entries, {}x{} needs {}",
                pixels.len(),
                width,
                height,
                expected
            )));
        }
        Ok(ImageBuffer { width, height, pixels })
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn pixel_count(&self) -> usize {
        self.pixels.len()
    }

    pub fn pixel(&self, x: u32, y: u32) -> Pixel {
        assert!(x < self.width && y < self.height, "pixel ({x}, {y}) out of bounds");
        self.pixels[(y as usize) * (self.width as usize) + x as usize]
    }

    pub fn pixel_mut(&mut self, x: u32, y: u32) -> &mut Pixel {
        assert!(x < self.width && y < self.height, "pixel ({x}, {y}) out of bounds");
        &mut self.pixels[(y as usize) * (self.width as usize) + x as usize]
    }

    pub fn pixels(&self) -> &[Pixel] {
        &self.pixels
    }

    pub fn pixels_mut(&mut self) -> &mut [Pixel] {
        &mut self.pixels
    }

    /// Maps a row-major index back to (x, y).
    pub fn coords(&self, index: usize) -> (u32, u32) {
        let w = self.width as usize;
        ((index % w) as u32, (index / w) as u32)
    }

    pub fn in_bounds(&self, x: u32, y: u32) -> bool {
        x < self.width && y < self.height
    }
}

fn pixel_count(width: u32, height: u32) -> Result<usize> {
    if width == 0 || height == 0 {
        return Err(Error::InvalidArgument(format!(
            "image dimensions must be positive, got {width}x{height}"
        )));
    }
    Ok(width as usize * height as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_order() {
        assert_eq!(Channel::R.succ(), Channel::G);
        assert_eq!(Channel::B.succ(), Channel::R);
        assert_eq!(Channel::R.pred(), Channel::B);
        for c in Channel::ALL {
            assert_eq!(c.pred().succ(), c);
            assert_eq!(c.succ().pred(), c);
        }
    }

    #[test]
    fn remaining_channel() {
        assert_eq!(Channel::R.remaining(Channel::G), Channel::B);
        assert_eq!(Channel::B.remaining(Channel::R), Channel::G);
    }

    #[test]
    fn pixel_indexing() {
        let mut p = Pixel::new(1, 2, 3);
        assert_eq!(p[Channel::R], 1);
        assert_eq!(p[Channel::G], 2);
        assert_eq!(p[Channel::B], 3);
        p[Channel::G] = 9;
        assert_eq!(p.g, 9);
    }

    #[test]
    fn row_major_layout() {
        let mut img = ImageBuffer::new(3, 2).unwrap();
        img.pixel_mut(2, 1).r = 7;
        assert_eq!(img.pixels()[5].r, 7);
        assert_eq!(img.coords(5), (2, 1));
        assert_eq!(img.coords(3), (0, 1));
    }

    #[test]
    fn rejects_empty_dimensions() {
        assert!(ImageBuffer::new(0, 4).is_err());
        assert!(ImageBuffer::new(4, 0).is_err());
        assert!(ImageBuffer::from_pixels(2, 2, vec![Pixel::new(0, 0, 0); 3]).is_err());
    }
}
