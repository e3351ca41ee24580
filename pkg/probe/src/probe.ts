import * as fs from 'fs';
import * as path from 'path';
import { decodeImageFile, toInputTensor } from './image';
import { imagenetLabels } from './labels';
import { Classifier, DEFAULT_MODEL, loadClassifier } from './model';

export interface ClassEntry {
  label: string;
  prob: number;
}

export interface ProbeRow {
  id: string;
  classes: ClassEntry[];
  caption?: string;
  meta: { model: string; top: number };
}

export interface ProbeOptions {
  imagesDir: string;
  top?: number;
  captionsFile?: string;
  model?: string;
  /** Receives one message per skipped file; defaults to console.error. */
  onSkip?: (message: string) => void;
}

export interface ProbeResult {
  rows: ProbeRow[];
  skipped: string[];
}

const IMAGE_EXTENSIONS = new Set(['.png', '.jpg', '.jpeg']);

export function listImageFiles(dir: string): string[] {
  return fs
    .readdirSync(dir)
    .filter((f) => IMAGE_EXTENSIONS.has(path.extname(f).toLowerCase()))
    .sort()
    .map((f) => path.join(dir, f));
}

/** Reads a JSONL captions file of {"id", "caption"} rows into a map. */
export function loadCaptions(file: string): Map<string, string> {
  const captions = new Map<string, string>();
  const lines = fs.readFileSync(file, 'utf-8').split('\n');
  lines.forEach((line, i) => {
    if (!line.trim()) return;
    const obj = JSON.parse(line);
    if (typeof obj.id !== 'string' || typeof obj.caption !== 'string') {
      throw new Error(`${file}: line ${i + 1}: captions need string 'id' and 'caption'`);
    }
    captions.set(obj.id, obj.caption);
  });
  return captions;
}

/**
 * Top-n class entries by descending probability; equal probabilities keep
 * label-index order so the output is fully deterministic.
 */
export function topClasses(probs: Float32Array, n: number): ClassEntry[] {
  const labels = imagenetLabels();
  if (probs.length !== labels.length) {
    throw new Error(`expected ${labels.length} probabilities, got ${probs.length}`);
  }
  const order = Array.from(probs.keys()).sort((a, b) => probs[b] - probs[a] || a - b);
  return order.slice(0, n).map((i) => ({ label: labels[i], prob: probs[i] }));
}

/**
 * Classifies every decodable image in a directory and returns one row per
 * image in the query JSONL shape (no gold field — merge that separately).
 * Undecodable files are skipped and reported, never fatal.
 */
export async function probeImages(opts: ProbeOptions): Promise<ProbeResult> {
  const top = opts.top ?? 10;
  if (!Number.isInteger(top) || top < 1 || top > 1000) {
    throw new Error(`--top must be an integer in [1, 1000], got ${top}`);
  }
  const files = listImageFiles(opts.imagesDir);
  const captions = opts.captionsFile ? loadCaptions(opts.captionsFile) : new Map<string, string>();
  const onSkip = opts.onSkip ?? ((msg: string) => console.error(msg));
  const classifier: Classifier = await loadClassifier(opts.model ?? DEFAULT_MODEL);

  const rows: ProbeRow[] = [];
  const skipped: string[] = [];
  for (const file of files) {
    const id = path.parse(file).name;
    let probs: Float32Array;
    try {
      const decoded = decodeImageFile(file);
      const input = toInputTensor(decoded, classifier.inputSize);
      try {
        probs = await classifier.classify(input);
      } finally {
        input.dispose();
      }
    } catch (err) {
      skipped.push(file);
      onSkip(`skipping ${file}: ${err instanceof Error ? err.message : err}`);
      continue;
    }
    const row: ProbeRow = {
      id,
      classes: topClasses(probs, top),
      meta: { model: classifier.name, top },
    };
    const caption = captions.get(id);
    if (caption !== undefined) {
      row.caption = caption;
    }
    rows.push(row);
  }
  return { rows, skipped };
}

export function writeJsonl(rows: object[], outFile: string): void {
  const text = rows.map((r) => JSON.stringify(r)).join('\n');
  fs.writeFileSync(outFile, rows.length ? text + '\n' : '');
}
