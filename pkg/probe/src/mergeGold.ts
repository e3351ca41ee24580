import * as fs from 'fs';

export interface MergeResult {
  rows: object[];
  /** Probe ids with no gold label. */
  unmatched: string[];
}

function readJsonl(file: string): { obj: Record<string, unknown>; lineno: number }[] {
  const out: { obj: Record<string, unknown>; lineno: number }[] = [];
  fs.readFileSync(file, 'utf-8')
    .split('\n')
    .forEach((line, i) => {
      if (!line.trim()) return;
      const obj = JSON.parse(line);
      if (typeof obj !== 'object' || obj === null || Array.isArray(obj)) {
        throw new Error(`${file}: line ${i + 1}: expected a JSON object`);
      }
      out.push({ obj, lineno: i + 1 });
    });
  return out;
}

/** Loads a gold-labels JSONL of {"id", "gold"}; duplicate ids are an error. */
export function loadGoldLabels(file: string): Map<string, string> {
  const gold = new Map<string, string>();
  for (const { obj, lineno } of readJsonl(file)) {
    const id = obj.id;
    const label = obj.gold;
    if (typeof id !== 'string' || !id || typeof label !== 'string' || !label) {
      throw new Error(`${file}: line ${lineno}: labels need string 'id' and 'gold'`);
    }
    if (gold.has(id)) {
      throw new Error(`${file}: duplicate id in labels: ${id}`);
    }
    gold.set(id, label);
  }
  return gold;
}

/**
 * Joins gold codepoints onto probe rows by id, producing labeled query
 * JSONL rows. Probe rows without a gold label are dropped and reported;
 * zero joined rows is an error.
 */
export function mergeGold(probeFile: string, labelsFile: string): MergeResult {
  const gold = loadGoldLabels(labelsFile);
  const rows: object[] = [];
  const unmatched: string[] = [];
  for (const { obj, lineno } of readJsonl(probeFile)) {
    const id = obj.id;
    if (typeof id !== 'string' || !id) {
      throw new Error(`${probeFile}: line ${lineno}: probe rows need a string 'id'`);
    }
    const label = gold.get(id);
    if (label === undefined) {
      unmatched.push(id);
      continue;
    }
    rows.push({ ...obj, gold: label });
  }
  if (rows.length === 0) {
    throw new Error(`no probe row matched any id in ${labelsFile}`);
  }
  return { rows, unmatched };
}
