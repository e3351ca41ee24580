import * as fs from 'fs';
import * as jpeg from 'jpeg-js';
import { PNG } from 'pngjs';

/** Writes a deterministic gradient PNG; phase varies the pixel pattern. */
export function writePng(file: string, phase = 0, size = 48): void {
  const png = new PNG({ width: size, height: size });
  for (let y = 0; y < size; y++) {
    for (let x = 0; x < size; x++) {
      const i = (y * size + x) * 4;
      png.data[i] = (x * 5 + phase * 37) % 256;
      png.data[i + 1] = (y * 7 + phase * 11) % 256;
      png.data[i + 2] = (x + y * 3 + phase * 53) % 256;
      png.data[i + 3] = 255;
    }
  }
  fs.writeFileSync(file, PNG.sync.write(png));
}

/** Writes a deterministic gradient JPEG. */
export function writeJpeg(file: string, phase = 0, size = 40): void {
  const data = Buffer.alloc(size * size * 4);
  for (let y = 0; y < size; y++) {
    for (let x = 0; x < size; x++) {
      const i = (y * size + x) * 4;
      data[i] = (x * 6 + phase * 29) % 256;
      data[i + 1] = (y * 4 + phase * 17) % 256;
      data[i + 2] = (x * 2 + y + phase * 41) % 256;
      data[i + 3] = 255;
    }
  }
  fs.writeFileSync(file, jpeg.encode({ data, width: size, height: size }, 90).data);
}

export function writeJsonlFile(file: string, rows: object[]): void {
  fs.writeFileSync(file, rows.map((r) => JSON.stringify(r)).join('\n') + '\n');
}

export function readJsonlFile(file: string): Record<string, unknown>[] {
  return fs
    .readFileSync(file, 'utf-8')
    .split('\n')
    .filter((line) => line.trim())
    .map((line) => JSON.parse(line));
}

export function makeTmpDir(prefix: string): string {
  return fs.mkdtempSync(`/tmp/${prefix}-`);
}
