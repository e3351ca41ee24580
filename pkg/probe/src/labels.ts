import * as fs from 'fs';
import * as path from 'path';

let cached: string[] | null = null;

/** Returns the 1000 ImageNet-1k class labels in canonical index order. */
export function imagenetLabels(): string[] {
  if (cached === null) {
    const file = path.join(__dirname, '..', 'data', 'imagenet_labels.json');
    const labels = JSON.parse(fs.readFileSync(file, 'utf-8'));
    if (!Array.isArray(labels) || labels.length !== 1000) {
      throw new Error(`bad label file ${file}: expected 1000 labels`);
    }
    cached = labels as string[];
  }
  return cached;
}
