//! Evaluation instruments: keyspace size, channel histograms, and the three
//! standard attacks against the dynamic codec (brute force over indicator
//! sequences, skip-blind sequential extraction, and fixed-width extraction).

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::codec::{recover_bits, BitRule, HEADER_BITS};
use crate::error::{Error, Result};
use crate::key::StegoKey;
use crate::pixel::{Channel, ImageBuffer};

/// Number of distinct indicator patterns of length `n`: `2 * 3^(n-2)`.
pub fn keyspace_count(n: usize) -> Result<BigUint> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "indicator length must be at least 3, got {n}"
        )));
    }
    Ok(BigUint::from(2u32) * BigUint::from(3u32).pow((n - 2) as u32))
}

/// `keyspace_count` in machine width; `None` once it no longer fits u64.
pub fn keyspace_count_u64(n: usize) -> Option<u64> {
    let mut count: u64 = 2;
    for _ in 0..(n - 2) {
        count = count.checked_mul(3)?;
    }
    Some(count)
}

/// 256-bin value histogram of one channel of one image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Histogram {
    bins: [u64; 256],
}

impl Histogram {
    pub fn bins(&self) -> &[u64; 256] {
        &self.bins
    }

    pub fn bin(&self, value: u8) -> u64 {
        self.bins[value as usize]
    }

    pub fn total(&self) -> u64 {
        self.bins.iter().sum()
    }
}

/// Counts how many pixels take each value in channel `c`.
pub fn channel_histogram(image: &ImageBuffer, c: Channel) -> Histogram {
    let mut bins = [0u64; 256];
    for pixel in image.pixels() {
        bins[pixel[c] as usize] += 1;
    }
    Histogram { bins }
}

/// L1 distance and largest single-bin difference between two histograms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HistogramDistance {
    pub l1: u64,
    pub max_bin_delta: u64,
}

pub fn histogram_distance(a: &Histogram, b: &Histogram) -> Result<HistogramDistance> {
    let (ta, tb) = (a.total(), b.total());
    if ta != tb {
        return Err(Error::DimensionMismatch(format!(
            "histograms cover {ta} and {tb} pixels"
        )));
    }
    let mut l1 = 0u64;
    let mut max_bin_delta = 0u64;
    for (&x, &y) in a.bins.iter().zip(&b.bins) {
        let delta = x.abs_diff(y);
        l1 += delta;
        max_bin_delta = max_bin_delta.max(delta);
    }
    Ok(HistogramDistance { l1, max_bin_delta })
}

/// Pixels whose channel `c` value differs between the two images.
pub fn changed_value_count(a: &ImageBuffer, b: &ImageBuffer, c: Channel) -> Result<u64> {
    if a.width() != b.width() || a.height() != b.height() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} vs {}x{}",
            a.width(),
            a.height(),
            b.width(),
            b.height()
        )));
    }
    Ok(a.pixels()
        .iter()
        .zip(b.pixels())
        .filter(|(x, y)| x[c] != y[c])
        .count() as u64)
}

/// Fraction of bytes in the printable ASCII range 0x20–0x7E.
/// Empty input scores zero.
pub fn printable_ratio(bytes: &[u8]) -> f64 {
    if bytes.is_empty() {
        return 0.0;
    }
    let printable = bytes.iter().filter(|b| (0x20..=0x7E).contains(*b)).count();
    printable as f64 / bytes.len() as f64
}

/// Outcome of one attack run.
#[derive(Debug, Clone, PartialEq)]
pub struct AttackReport {
    pub attack: String,
    pub recovered: Vec<u8>,
    pub printable_ratio: f64,
    /// Set by [`AttackReport::compare_with`] when the true message is known.
    pub matched: Option<bool>,
}

impl AttackReport {
    fn new(attack: impl Into<String>, recovered: Vec<u8>) -> AttackReport {
        let printable_ratio = printable_ratio(&recovered);
        AttackReport {
            attack: attack.into(),
            recovered,
            printable_ratio,
            matched: None,
        }
    }

    /// Records whether the recovery equals the true message.
    pub fn compare_with(&mut self, truth: &[u8]) -> bool {
        let matched = self.recovered == truth;
        self.matched = Some(matched);
        matched
    }
}

/// Recovers `expected_len` bytes (after the 32-bit header position) under a
/// candidate read strategy; short when the image runs out of pixels.
fn attack_recover<F>(
    stego: &ImageBuffer,
    indicator_at: F,
    honor_skips: bool,
    rule: BitRule,
    expected_len: usize,
) -> Vec<u8>
where
    F: Fn(usize) -> Channel,
{
    let target = HEADER_BITS + 8 * expected_len as u64;
    let collected = recover_bits(stego, indicator_at, honor_skips, rule, |bits| {
        bits.position() as u64 >= target
    });
    let bytes = collected.bytes();
    if collected.position() <= HEADER_BITS as usize {
        return Vec::new();
    }
    let end = usize::min((collected.position() / 8).max(4), 4 + expected_len);
    bytes[4..end].to_vec()
}

/// Extraction that pretends no pixel is ever skipped: the skip rule is
/// ignored, everything else follows the key. Garbles the payload as soon as
/// one genuinely skipped pixel injects bits the embedder never wrote.
pub fn attack_sequential(stego: &ImageBuffer, key: &StegoKey, expected_len: usize) -> AttackReport {
    let recovered = attack_recover(
        stego,
        |i| key.channel_at(i),
        false,
        BitRule::FlagLsb,
        expected_len,
    );
    AttackReport::new("sequential", recovered)
}

/// Extraction that reads a fixed `bits_per_pixel` from every data channel,
/// ignoring the flag channel. Misaligns against any mixed 3/4-bit embedding.
pub fn attack_uniform(
    stego: &ImageBuffer,
    key: &StegoKey,
    bits_per_pixel: u8,
    expected_len: usize,
) -> Result<AttackReport> {
    if !(1..=4).contains(&bits_per_pixel) {
        return Err(Error::InvalidArgument(format!(
            "uniform attack reads 1-4 bits per pixel, got {bits_per_pixel}"
        )));
    }
    let recovered = attack_recover(
        stego,
        |i| key.channel_at(i),
        true,
        BitRule::Fixed(bits_per_pixel),
        expected_len,
    );
    Ok(AttackReport::new(format!("uniform-{bits_per_pixel}"), recovered))
}

/// One scored brute-force candidate.
#[derive(Debug, Clone, PartialEq)]
pub struct BruteForceHit {
    pub indicator: Vec<Channel>,
    pub printable_ratio: f64,
}

/// Candidate pattern `idx` of length `n`: the first channel is fixed to R,
/// the second is G for the lower half of the index space and B for the upper,
/// and the remaining positions enumerate base-3 digits. Exactly
/// `2 * 3^(n-2)` patterns exist, matching [`keyspace_count`].
fn pattern_by_index(n: usize, idx: u64) -> Vec<Channel> {
    let half = keyspace_count_u64(n).unwrap() / 2;
    let mut pattern = Vec::with_capacity(n);
    pattern.push(Channel::R);
    pattern.push(if idx < half { Channel::G } else { Channel::B });
    let mut tail_idx = idx % half;
    let mut tail = vec![Channel::R; n - 2];
    for slot in tail.iter_mut().rev() {
        *slot = Channel::ALL[(tail_idx % 3) as usize];
        tail_idx /= 3;
    }
    pattern.extend(tail);
    pattern
}

/// Uniform draw from the same pattern family as [`pattern_by_index`].
fn sample_pattern(n: usize, rng: &mut ChaCha8Rng) -> Vec<Channel> {
    let mut pattern = Vec::with_capacity(n);
    pattern.push(Channel::R);
    pattern.push(if rng.random_range(0..2) == 0 { Channel::G } else { Channel::B });
    for _ in 2..n {
        pattern.push(Channel::ALL[rng.random_range(0..3)]);
    }
    pattern
}

/// Brute-force search over candidate indicator sequences of length `n`.
///
/// Enumerates the whole pattern space when it fits the trial budget,
/// otherwise scores `budget` seeded random candidates. Results are sorted by
/// printable ratio descending, ties broken by candidate order, regardless of
/// evaluation order.
pub fn attack_bruteforce(
    stego: &ImageBuffer,
    n: usize,
    budget: u64,
    expected_len: usize,
    seed: u64,
) -> Result<Vec<BruteForceHit>> {
    if budget == 0 {
        return Err(Error::InvalidArgument("brute force needs a budget of at least 1 trial".into()));
    }
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "indicator length must be at least 3, got {n}"
        )));
    }

    let exhaustive = keyspace_count_u64(n).is_some_and(|count| count <= budget);
    let candidates: Vec<Vec<Channel>> = if exhaustive {
        let count = keyspace_count_u64(n).unwrap();
        (0..count).map(|idx| pattern_by_index(n, idx)).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..budget).map(|_| sample_pattern(n, &mut rng)).collect()
    };

    let mut hits: Vec<BruteForceHit> = candidates
        .into_iter()
        .map(|indicator| {
            let recovered = attack_recover(
                stego,
                |i| indicator[i % indicator.len()],
                true,
                BitRule::FlagLsb,
                expected_len,
            );
            BruteForceHit {
                printable_ratio: printable_ratio(&recovered),
                indicator,
            }
        })
        .collect();

    hits.sort_by(|a, b| {
        b.printable_ratio
            .partial_cmp(&a.printable_ratio)
            .unwrap()
            .then_with(|| a.indicator.cmp(&b.indicator))
    });
    Ok(hits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::embed;
    use crate::key::keygen;
    use crate::pixel::Pixel;
    use crate::testutil::{random_image, uniform_image};
    use rand::Rng as _;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn keyspace_table_values() {
        assert_eq!(keyspace_count(3).unwrap(), BigUint::from(6u32));
        assert_eq!(keyspace_count(10).unwrap(), BigUint::from(13_122u32));
        assert_eq!(keyspace_count(15).unwrap(), BigUint::from(3_188_646u32));
        assert_eq!(keyspace_count(20).unwrap(), BigUint::from(774_840_978u32));
        assert!(keyspace_count(2).is_err());
    }

    #[test]
    fn keyspace_grows_by_factor_three() {
        for n in 3..40 {
            let a = keyspace_count(n).unwrap();
            let b = keyspace_count(n + 1).unwrap();
            assert_eq!(b, &a * 3u32);
            assert!(b > a);
        }
        assert_eq!(keyspace_count_u64(20), Some(774_840_978));
        assert_eq!(keyspace_count_u64(64), None);
    }

    #[test]
    fn histogram_uniform_image() {
        let image = uniform_image(2, 2, Pixel::new(10, 20, 30));
        let h = channel_histogram(&image, Channel::R);
        assert_eq!(h.bin(10), 4);
        assert_eq!(h.total(), 4);
        assert_eq!(h.bins().iter().filter(|&&b| b != 0).count(), 1);
        assert_eq!(channel_histogram(&image, Channel::R), h);
    }

    #[test]
    fn histogram_distance_examples() {
        let image = uniform_image(2, 2, Pixel::new(10, 20, 30));
        let h1 = channel_histogram(&image, Channel::R);
        assert_eq!(
            histogram_distance(&h1, &h1).unwrap(),
            HistogramDistance { l1: 0, max_bin_delta: 0 }
        );

        let mut moved = image.clone();
        moved.pixel_mut(0, 0).r = 11;
        let h2 = channel_histogram(&moved, Channel::R);
        assert_eq!(
            histogram_distance(&h1, &h2).unwrap(),
            HistogramDistance { l1: 2, max_bin_delta: 1 }
        );

        let bigger = uniform_image(3, 3, Pixel::new(10, 20, 30));
        let h3 = channel_histogram(&bigger, Channel::R);
        assert!(histogram_distance(&h1, &h3).is_err());
    }

    #[test]
    fn histogram_l1_bounded_by_changed_values() {
        let mut rng = ChaCha8Rng::seed_from_u64(61);
        let cover = random_image(64, 64, &mut rng);
        let key = keygen(20, 8).unwrap();
        let message: Vec<u8> = (0..400).map(|_| rng.random()).collect();
        let stego = embed(&cover, &key, &message).unwrap().stego;
        for c in Channel::ALL {
            let changed = changed_value_count(&cover, &stego, c).unwrap();
            let d = histogram_distance(
                &channel_histogram(&cover, c),
                &channel_histogram(&stego, c),
            )
            .unwrap();
            assert!(d.l1 <= 2 * changed, "l1 {} changed {}", d.l1, changed);
            assert!(d.max_bin_delta <= changed);
        }
    }

    #[test]
    fn printable_ratio_ranges() {
        assert_eq!(printable_ratio(b"hello"), 1.0);
        assert_eq!(printable_ratio(&[0x00, 0x01]), 0.0);
        assert_eq!(printable_ratio(&[b'a', 0x00]), 0.5);
        assert_eq!(printable_ratio(b""), 0.0);
    }

    /// Uniform mid-gray covers never skip (all masked values tie) and embed
    /// three bits everywhere, so skip-blind and fixed-3 readers both align.
    fn no_skip_cover(rng: &mut ChaCha8Rng) -> ImageBuffer {
        let pixels = (0..64 * 64)
            .map(|_| {
                Pixel::new(
                    128 | rng.random_range(0..16u8),
                    128 | rng.random_range(0..16u8),
                    128 | rng.random_range(0..16u8),
                )
            })
            .collect();
        ImageBuffer::from_pixels(64, 64, pixels).unwrap()
    }

    #[test]
    fn sequential_attack_fails_when_skips_exist() {
        let mut rng = ChaCha8Rng::seed_from_u64(67);
        let cover = random_image(64, 64, &mut rng);
        let key = keygen(20, 9).unwrap();
        let message = b"the quick brown fox";
        let outcome = embed(&cover, &key, message).unwrap();
        assert!(!outcome.skipped_positions.is_empty());
        let mut report = attack_sequential(&outcome.stego, &key, message.len());
        assert!(!report.compare_with(message));
    }

    #[test]
    fn sequential_attack_degenerates_to_extraction_without_skips() {
        let mut rng = ChaCha8Rng::seed_from_u64(71);
        let cover = no_skip_cover(&mut rng);
        let key = keygen(20, 10).unwrap();
        let message = b"smooth sailing";
        let outcome = embed(&cover, &key, message).unwrap();
        assert!(outcome.skipped_positions.is_empty());
        let mut report = attack_sequential(&outcome.stego, &key, message.len());
        assert!(report.compare_with(message));
        assert_eq!(report.printable_ratio, 1.0);
    }

    #[test]
    fn sequential_attack_on_noise_never_matches() {
        let mut rng = ChaCha8Rng::seed_from_u64(73);
        let key = keygen(20, 11).unwrap();
        let message = b"needle in noise";
        let mut matches = 0;
        for _ in 0..1000 {
            let noise = random_image(16, 16, &mut rng);
            let mut report = attack_sequential(&noise, &key, message.len());
            if report.compare_with(message) {
                matches += 1;
            }
        }
        assert_eq!(matches, 0);
    }

    #[test]
    fn uniform_attack_fails_on_mixed_widths() {
        let mut rng = ChaCha8Rng::seed_from_u64(79);
        let cover = random_image(64, 64, &mut rng);
        let key = keygen(20, 12).unwrap();
        let message = b"mixed bit widths here";
        let outcome = embed(&cover, &key, message).unwrap();
        let mut report = attack_uniform(&outcome.stego, &key, 2, message.len()).unwrap();
        assert!(!report.compare_with(message));
    }

    #[test]
    fn uniform_attack_matches_constant_width_embedding() {
        let mut rng = ChaCha8Rng::seed_from_u64(83);
        let cover = no_skip_cover(&mut rng);
        let key = keygen(20, 13).unwrap();
        let message = b"all threes";
        let outcome = embed(&cover, &key, message).unwrap();
        let mut report = attack_uniform(&outcome.stego, &key, 3, message.len()).unwrap();
        assert!(report.compare_with(message));
        // Reading the wrong constant width shifts every chunk.
        let mut wrong = attack_uniform(&outcome.stego, &key, 4, message.len()).unwrap();
        assert!(!wrong.compare_with(message));
    }

    #[test]
    fn uniform_attack_validates_width() {
        let image = uniform_image(4, 4, Pixel::new(1, 2, 3));
        let key = keygen(3, 0).unwrap();
        assert!(attack_uniform(&image, &key, 0, 4).is_err());
        assert!(attack_uniform(&image, &key, 5, 4).is_err());
    }

    #[test]
    fn pattern_enumeration_matches_keyspace() {
        assert_eq!(keyspace_count_u64(3), Some(6));
        let patterns: Vec<Vec<Channel>> = (0..6).map(|i| pattern_by_index(3, i)).collect();
        for p in &patterns {
            assert_eq!(p.len(), 3);
            assert_eq!(p[0], Channel::R);
            assert_ne!(p[1], Channel::R);
        }
        // All distinct.
        let mut sorted = patterns.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 6);
    }

    #[test]
    fn bruteforce_exhaustive_finds_planted_key() {
        let mut rng = ChaCha8Rng::seed_from_u64(89);
        let cover = random_image(32, 32, &mut rng);
        let true_key = StegoKey::new(pattern_by_index(3, 4)).unwrap();
        let message = b"exhaustively found";
        let outcome = embed(&cover, &true_key, message).unwrap();

        let hits = attack_bruteforce(&outcome.stego, 3, 10, message.len(), 0).unwrap();
        assert_eq!(hits.len(), 6);
        let best = &hits[0];
        assert_eq!(best.indicator, true_key.indicator());
        assert_eq!(best.printable_ratio, 1.0);
    }

    #[test]
    fn bruteforce_sampling_is_deterministic() {
        let mut rng = ChaCha8Rng::seed_from_u64(97);
        let cover = random_image(16, 16, &mut rng);
        let key = keygen(20, 14).unwrap();
        let outcome = embed(&cover, &key, b"eight bytes!").unwrap();
        let a = attack_bruteforce(&outcome.stego, 20, 50, 12, 5).unwrap();
        let b = attack_bruteforce(&outcome.stego, 20, 50, 12, 5).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 50);
        assert!(attack_bruteforce(&outcome.stego, 20, 0, 12, 5).is_err());
    }
}
