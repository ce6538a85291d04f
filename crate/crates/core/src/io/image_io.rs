use std::io::Cursor;
use std::path::Path;

use image::{ImageFormat, RgbImage};

use super::{read_file, IoError};
use crate::geometry::RasterImage;

/// Reads a PNG or JPEG file as 8-bit RGB.
pub fn load_image(path: &Path) -> Result<RasterImage, IoError> {
    decode_image(&read_file(path)?)
}

/// Decodes PNG or JPEG bytes, expanding grey and dropping alpha.
pub fn decode_image(data: &[u8]) -> Result<RasterImage, IoError> {
    let format = image::guess_format(data)?;
    if !matches!(format, ImageFormat::Png | ImageFormat::Jpeg) {
        return Err(IoError::UnsupportedFormat(format!("{format:?}")));
    }
    let rgb = image::load_from_memory_with_format(data, format)?.into_rgb8();
    let (w, h) = rgb.dimensions();
    Ok(RasterImage::from_raw(w, h, rgb.into_raw()).expect("decoder returns a full buffer"))
}

/// Encodes as an RGB PNG.
pub fn encode_png(image: &RasterImage) -> Result<Vec<u8>, IoError> {
    if image.is_empty() {
        return Err(IoError::EmptyImage);
    }
    let buf = RgbImage::from_raw(image.width(), image.height(), image.as_raw().to_vec())
        .expect("raster buffers always match their dimensions");
    let mut out = Cursor::new(Vec::new());
    buf.write_to(&mut out, ImageFormat::Png)?;
    Ok(out.into_inner())
}

/// Writes a PNG file. Any extension other than `.png` is refused.
pub fn save_image(image: &RasterImage, path: &Path) -> Result<(), IoError> {
    let ext = path
        .extension()
        .and_then(|e| e.to_str())
        .map(str::to_ascii_lowercase)
        .unwrap_or_default();
    if ext != "png" {
        return Err(IoError::UnsupportedFormat(ext));
    }
    let bytes = encode_png(image)?;
    std::fs::write(path, bytes).map_err(|source| IoError::File {
        path: path.to_path_buf(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn png_round_trip_is_lossless() {
        let pixels: Vec<u8> = (0..48u8).map(|i| i.wrapping_mul(37)).collect();
        let img = RasterImage::from_raw(4, 4, pixels).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("a.png");
        save_image(&img, &path).unwrap();
        assert_eq!(load_image(&path).unwrap(), img);
    }

    #[test]
    fn empty_and_non_png_rejected() {
        let dir = tempfile::tempdir().unwrap();
        assert!(matches!(
            save_image(&RasterImage::white(0, 0), &dir.path().join("e.png")),
            Err(IoError::EmptyImage)
        ));
        assert!(matches!(
            save_image(&RasterImage::white(2, 2), &dir.path().join("e.jpg")),
            Err(IoError::UnsupportedFormat(_))
        ));
        assert!(matches!(
            load_image(&dir.path().join("missing.png")),
            Err(IoError::File { .. })
        ));
    }

    #[test]
    fn grayscale_png_expands_to_rgb() {
        let grey = image::GrayImage::from_raw(2, 2, vec![0, 85, 170, 255]).unwrap();
        let mut bytes = Cursor::new(Vec::new());
        grey.write_to(&mut bytes, ImageFormat::Png).unwrap();
        let img = decode_image(bytes.get_ref()).unwrap();
        assert_eq!(img.pixel(1, 0), [85, 85, 85]);
        assert_eq!(img.pixel(0, 1), [170, 170, 170]);
        assert_eq!(img.pixel(1, 1), [255, 255, 255]);
    }

    #[test]
    fn jpeg_is_readable() {
        let rgb = RgbImage::from_pixel(8, 8, image::Rgb([200, 40, 40]));
        let mut bytes = Cursor::new(Vec::new());
        rgb.write_to(&mut bytes, ImageFormat::Jpeg).unwrap();
        let img = decode_image(bytes.get_ref()).unwrap();
        assert_eq!((img.width(), img.height()), (8, 8));
        let [r, g, _] = img.pixel(4, 4);
        assert!(r > 150 && g < 90);
    }
}
