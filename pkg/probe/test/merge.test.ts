import * as fs from 'fs';
import * as path from 'path';
import { afterAll, describe, expect, it } from 'vitest';
import { loadGoldLabels, mergeGold } from '../src/mergeGold';
import { makeTmpDir, writeJsonlFile } from './helpers';

const dir = makeTmpDir('merge');

afterAll(() => {
  fs.rmSync(dir, { recursive: true, force: true });
});

function probeFile(name: string, ids: string[]): string {
  const file = path.join(dir, name);
  writeJsonlFile(
    file,
    ids.map((id) => ({
      id,
      classes: [{ label: 'tabby', prob: 0.5 }],
      meta: { model: 'tiny-cnn', top: 1 },
    })),
  );
  return file;
}

function labelsFile(name: string, rows: object[]): string {
  const file = path.join(dir, name);
  writeJsonlFile(file, rows);
  return file;
}

describe('loadGoldLabels', () => {
  it('reads id-to-gold pairs', () => {
    const file = labelsFile('ok.jsonl', [
      { id: 'a', gold: 'U+1F436' },
      { id: 'b', gold: 'U+2615' },
    ]);
    const gold = loadGoldLabels(file);
    expect(gold.get('a')).toBe('U+1F436');
    expect(gold.get('b')).toBe('U+2615');
  });

  it('raises on a duplicate id, naming it', () => {
    const file = labelsFile('dup.jsonl', [
      { id: 'a', gold: 'U+1F436' },
      { id: 'a', gold: 'U+2615' },
    ]);
    expect(() => loadGoldLabels(file)).toThrow(/duplicate id in labels: a/);
  });

  it('raises on a malformed row with its line number', () => {
    const file = labelsFile('bad.jsonl', [{ id: 'a', gold: 'U+1F436' }, { id: 'b' }]);
    expect(() => loadGoldLabels(file)).toThrow(/line 2/);
  });
});

describe('mergeGold', () => {
  it('joins gold onto every matching probe row', () => {
    const probe = probeFile('p3.jsonl', ['a', 'b', 'c']);
    const labels = labelsFile('l3.jsonl', [
      { id: 'a', gold: 'U+1F436' },
      { id: 'b', gold: 'U+2615' },
      { id: 'c', gold: 'U+26BD' },
    ]);
    const { rows, unmatched } = mergeGold(probe, labels);
    expect(rows).toHaveLength(3);
    expect(unmatched).toEqual([]);
    const first = rows[0] as Record<string, unknown>;
    expect(first.gold).toBe('U+1F436');
    expect(first.classes).toEqual([{ label: 'tabby', prob: 0.5 }]);
    expect(first.meta).toEqual({ model: 'tiny-cnn', top: 1 });
  });

  it('reports probe ids with no label and keeps the rest', () => {
    const probe = probeFile('p3b.jsonl', ['a', 'b', 'c']);
    const labels = labelsFile('l2.jsonl', [
      { id: 'a', gold: 'U+1F436' },
      { id: 'c', gold: 'U+26BD' },
    ]);
    const { rows, unmatched } = mergeGold(probe, labels);
    expect(rows.map((r) => (r as Record<string, unknown>).id)).toEqual(['a', 'c']);
    expect(unmatched).toEqual(['b']);
  });

  it('raises when no probe row matches any label', () => {
    const probe = probeFile('p1.jsonl', ['x']);
    const labels = labelsFile('l1.jsonl', [{ id: 'a', gold: 'U+1F436' }]);
    expect(() => mergeGold(probe, labels)).toThrow(/no probe row matched/);
  });
});
