use super::GeometryError;

pub type Rgb = [u8; 3];

/// An 8-bit RGB page image, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RasterImage {
    width: u32,
    height: u32,
    pixels: Vec<u8>,
}

impl RasterImage {
    /// A uniformly filled image.
    pub fn filled(width: u32, height: u32, color: Rgb) -> Self {
        let n = width as usize * height as usize;
        let mut pixels = Vec::with_capacity(n * 3);
        for _ in 0..n {
            pixels.extend_from_slice(&color);
        }
        Self {
            width,
            height,
            pixels,
        }
    }

    pub fn white(width: u32, height: u32) -> Self {
        Self::filled(width, height, [255, 255, 255])
    }

    pub fn from_raw(width: u32, height: u32, pixels: Vec<u8>) -> Result<Self, GeometryError> {
        if pixels.len() != width as usize * height as usize * 3 {
            return Err(GeometryError::BufferSize {
                width,
                height,
                len: pixels.len(),
            });
        }
        Ok(Self {
            width,
            height,
            pixels,
        })
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn is_empty(&self) -> bool {
        self.width == 0 || self.height == 0
    }

    pub fn as_raw(&self) -> &[u8] {
        &self.pixels
    }

    pub fn into_raw(self) -> Vec<u8> {
        self.pixels
    }

    fn offset(&self, x: u32, y: u32) -> usize {
        (y as usize * self.width as usize + x as usize) * 3
    }

    /// # Panics
    ///
    /// Panics when `(x, y)` is out of bounds.
    pub fn pixel(&self, x: u32, y: u32) -> Rgb {
        assert!(x < self.width && y < self.height, "pixel out of bounds");
        let o = self.offset(x, y);
        [self.pixels[o], self.pixels[o + 1], self.pixels[o + 2]]
    }

    /// # Panics
    ///
    /// Panics when `(x, y)` is out of bounds.
    pub fn put_pixel(&mut self, x: u32, y: u32, color: Rgb) {
        assert!(x < self.width && y < self.height, "pixel out of bounds");
        let o = self.offset(x, y);
        self.pixels[o..o + 3].copy_from_slice(&color);
    }

    /// Writes the pixel when `(x, y)` lies on the image; ignores it otherwise.
    pub fn put_pixel_clipped(&mut self, x: i64, y: i64, color: Rgb) {
        if x >= 0 && y >= 0 && (x as u64) < self.width as u64 && (y as u64) < self.height as u64 {
            self.put_pixel(x as u32, y as u32, color);
        }
    }

    /// Rec. 601 luma of a pixel.
    pub fn luma(&self, x: u32, y: u32) -> u8 {
        let [r, g, b] = self.pixel(x, y);
        ((299 * r as u32 + 587 * g as u32 + 114 * b as u32 + 500) / 1000) as u8
    }

    /// Copies the `w`×`h` block at `(x, y)`; the block must lie on the image.
    pub fn sub_image(&self, x: u32, y: u32, w: u32, h: u32) -> RasterImage {
        assert!(x + w <= self.width && y + h <= self.height, "sub-image out of bounds");
        let mut pixels = Vec::with_capacity(w as usize * h as usize * 3);
        for row in y..y + h {
            let start = self.offset(x, row);
            pixels.extend_from_slice(&self.pixels[start..start + w as usize * 3]);
        }
        RasterImage {
            width: w,
            height: h,
            pixels,
        }
    }

    /// Nearest-neighbour resize.
    pub fn resize_nearest(&self, width: u32, height: u32) -> RasterImage {
        let mut out = RasterImage::white(width, height);
        if self.is_empty() {
            return out;
        }
        for y in 0..height {
            let sy = ((y as u64 * self.height as u64) / height as u64) as u32;
            for x in 0..width {
                let sx = ((x as u64 * self.width as u64) / width as u64) as u32;
                out.put_pixel(x, y, self.pixel(sx, sy));
            }
        }
        out
    }

    /// Pastes `src` with its top-left at `(x, y)`, clipping at the borders.
    pub fn blit(&mut self, src: &RasterImage, x: i64, y: i64) {
        for sy in 0..src.height {
            for sx in 0..src.width {
                self.put_pixel_clipped(x + sx as i64, y + sy as i64, src.pixel(sx, sy));
            }
        }
    }
}
