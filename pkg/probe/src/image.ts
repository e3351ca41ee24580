import * as fs from 'fs';
import * as tf from '@tensorflow/tfjs';
import * as jpeg from 'jpeg-js';
import { PNG } from 'pngjs';

export interface DecodedImage {
  width: number;
  height: number;
  /** RGBA byte data, 4 channels per pixel. */
  data: Uint8Array;
}

/**
 * Decodes a PNG or JPEG file to RGBA pixels. The format is sniffed from
 * magic bytes, not the file extension. Throws on anything undecodable.
 */
export function decodeImageFile(filePath: string): DecodedImage {
  const buf = fs.readFileSync(filePath);
  if (buf.length >= 8 && buf[0] === 0x89 && buf[1] === 0x50 && buf[2] === 0x4e && buf[3] === 0x47) {
    const png = PNG.sync.read(buf);
    return { width: png.width, height: png.height, data: new Uint8Array(png.data) };
  }
  if (buf.length >= 2 && buf[0] === 0xff && buf[1] === 0xd8) {
    const img = jpeg.decode(buf, { useTArray: true, maxMemoryUsageInMB: 64 });
    return { width: img.width, height: img.height, data: img.data };
  }
  throw new Error(`not a PNG or JPEG file: ${filePath}`);
}

/**
 * Converts decoded RGBA pixels to a float RGB tensor of shape
 * [size, size, 3] with values in [0, 1], resized bilinearly.
 */
export function toInputTensor(image: DecodedImage, size: number): tf.Tensor3D {
  return tf.tidy(() => {
    const rgba = tf.tensor3d(image.data, [image.height, image.width, 4], 'int32');
    const rgb = tf.slice(rgba, [0, 0, 0], [image.height, image.width, 3]);
    const resized = tf.image.resizeBilinear(rgb.toFloat() as tf.Tensor3D, [size, size]);
    return tf.div(resized, 255) as tf.Tensor3D;
  });
}
