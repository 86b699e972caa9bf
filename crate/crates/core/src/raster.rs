//! In-memory rasters: 8-bit grayscale images and binary masks.
//!
//! Pixels are addressed as (x, y) with x running right and y running
//! down, row-major storage. File formats live in the companion crate.

use alloc::vec::Vec;

use crate::error::Error;

/// 8-bit grayscale raster.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayImage {
    width: usize,
    height: usize,
    data: Vec<u8>,
}

impl GrayImage {
    /// # Errors
    ///
    /// [`Error::InvalidArgument`] when `data.len() != width * height` or
    /// either dimension is zero.
    pub fn new(width: usize, height: usize, data: Vec<u8>) -> Result<Self, Error> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidArgument(alloc::format!(
                "image dimensions {width}x{height}"
            )));
        }
        if data.len() != width * height {
            return Err(Error::InvalidArgument(alloc::format!(
                "{} pixels for a {width}x{height} image",
                data.len()
            )));
        }
        Ok(GrayImage { width, height, data })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn get(&self, x: usize, y: usize) -> u8 {
        self.data[y * self.width + x]
    }

    /// Intensity with coordinates clamped to the image border.
    pub fn get_clamped(&self, x: isize, y: isize) -> u8 {
        let x = x.clamp(0, self.width as isize - 1) as usize;
        let y = y.clamp(0, self.height as isize - 1) as usize;
        self.get(x, y)
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    pub fn contains(&self, x: f64, y: f64) -> bool {
        x >= 0.0 && y >= 0.0 && x < self.width as f64 && y < self.height as f64
    }
}

/// Binary raster, true marking foreground.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryMask {
    width: usize,
    height: usize,
    data: Vec<bool>,
}

impl BinaryMask {
    /// # Errors
    ///
    /// [`Error::InvalidArgument`] when `data.len() != width * height` or
    /// either dimension is zero.
    pub fn new(width: usize, height: usize, data: Vec<bool>) -> Result<Self, Error> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidArgument(alloc::format!(
                "mask dimensions {width}x{height}"
            )));
        }
        if data.len() != width * height {
            return Err(Error::InvalidArgument(alloc::format!(
                "{} pixels for a {width}x{height} mask",
                data.len()
            )));
        }
        Ok(BinaryMask { width, height, data })
    }

    /// Foreground is every pixel strictly above `threshold`.
    pub fn from_gray(img: &GrayImage, threshold: u8) -> Self {
        BinaryMask {
            width: img.width(),
            height: img.height(),
            data: img.data().iter().map(|&v| v > threshold).collect(),
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn get(&self, x: usize, y: usize) -> bool {
        self.data[y * self.width + x]
    }

    pub fn pixel_count(&self) -> usize {
        self.data.iter().filter(|&&b| b).count()
    }

    pub fn data(&self) -> &[bool] {
        &self.data
    }
}
