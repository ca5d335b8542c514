//! Shared fixtures for unit tests.

use crate::gf2::Flat;
use crate::partitions::FlatPartition;

/// A proper partition of F_2^5 into eight flats A_0..A_7.
pub(crate) fn a0_a7() -> FlatPartition {
    let rows: [[u32; 4]; 8] = [
        [0b00000, 0b00001, 0b00010, 0b00011],
        [0b00101, 0b01110, 0b10100, 0b11111],
        [0b10000, 0b10111, 0b11001, 0b11110],
        [0b00110, 0b01100, 0b10001, 0b11011],
        [0b01000, 0b01101, 0b10011, 0b10110],
        [0b00100, 0b01011, 0b10010, 0b11101],
        [0b01001, 0b01111, 0b11010, 0b11100],
        [0b00111, 0b01010, 0b10101, 0b11000],
    ];
    let flats = rows
        .iter()
        .map(|r| Flat::from_points(5, *r).unwrap())
        .collect();
    FlatPartition::from_flats(4, flats).unwrap()
}
