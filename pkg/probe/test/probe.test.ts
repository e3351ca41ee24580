import * as fs from 'fs';
import * as path from 'path';
import { afterAll, describe, expect, it } from 'vitest';
import { listImageFiles, probeImages, topClasses } from '../src/probe';
import { imagenetLabels } from '../src/labels';
import { makeTmpDir, writeJpeg, writeJsonlFile, writePng } from './helpers';

const tmpDirs: string[] = [];

function imageDir(): string {
  const dir = makeTmpDir('probe-imgs');
  tmpDirs.push(dir);
  return dir;
}

afterAll(() => {
  for (const dir of tmpDirs) {
    fs.rmSync(dir, { recursive: true, force: true });
  }
});

describe('imagenetLabels', () => {
  it('carries the full 1000-class label set', () => {
    const labels = imagenetLabels();
    expect(labels).toHaveLength(1000);
    expect(labels[207]).toBe('golden retriever');
    expect(labels[281]).toBe('tabby');
  });
});

describe('topClasses', () => {
  it('orders by descending probability with index tie-break', () => {
    const probs = new Float32Array(1000);
    probs[500] = 0.5;
    probs[3] = 0.2;
    probs[700] = 0.2;
    const top = topClasses(probs, 3);
    expect(top.map((c) => c.prob)).toEqual([0.5, 0.20000000298023224, 0.20000000298023224]);
    expect(top[0].label).toBe(imagenetLabels()[500]);
    expect(top[1].label).toBe(imagenetLabels()[3]);
    expect(top[2].label).toBe(imagenetLabels()[700]);
  });

  it('rejects probability arrays of the wrong length', () => {
    expect(() => topClasses(new Float32Array(10), 3)).toThrow(/expected 1000/);
  });
});

describe('listImageFiles', () => {
  it('picks up png and jpeg only, sorted', () => {
    const dir = imageDir();
    writePng(path.join(dir, 'b.png'));
    writeJpeg(path.join(dir, 'a.jpg'));
    fs.writeFileSync(path.join(dir, 'notes.txt'), 'not an image');
    expect(listImageFiles(dir).map((f) => path.basename(f))).toEqual(['a.jpg', 'b.png']);
  });
});

describe('probeImages', () => {
  it('exports top-5 descending probabilities summing to at most one', async () => {
    const dir = imageDir();
    writePng(path.join(dir, 'sample.png'));
    const { rows, skipped } = await probeImages({ imagesDir: dir, top: 5 });
    expect(skipped).toEqual([]);
    expect(rows).toHaveLength(1);
    const row = rows[0];
    expect(row.id).toBe('sample');
    expect(row.meta).toEqual({ model: 'tiny-cnn', top: 5 });
    expect(row.classes).toHaveLength(5);
    let sum = 0;
    for (let i = 0; i < row.classes.length; i++) {
      const { label, prob } = row.classes[i];
      expect(imagenetLabels()).toContain(label);
      expect(prob).toBeGreaterThan(0);
      if (i > 0) {
        expect(prob).toBeLessThanOrEqual(row.classes[i - 1].prob);
      }
      sum += prob;
    }
    expect(sum).toBeLessThanOrEqual(1 + 1e-6);
  });

  it('skips an undecodable file and keeps the rest', async () => {
    const dir = imageDir();
    writePng(path.join(dir, 'a.png'), 1);
    writeJpeg(path.join(dir, 'b.jpg'), 2);
    fs.writeFileSync(path.join(dir, 'c.png'), Buffer.from('this is not a png'));
    const messages: string[] = [];
    const { rows, skipped } = await probeImages({
      imagesDir: dir,
      top: 3,
      onSkip: (m) => messages.push(m),
    });
    expect(rows.map((r) => r.id)).toEqual(['a', 'b']);
    expect(skipped).toHaveLength(1);
    expect(skipped[0]).toContain('c.png');
    expect(messages).toHaveLength(1);
    expect(messages[0]).toContain('c.png');
  });

  it('produces identical rows across independent runs', async () => {
    const dir = imageDir();
    writePng(path.join(dir, 'x.png'), 4);
    writeJpeg(path.join(dir, 'y.jpg'), 5);
    const first = await probeImages({ imagesDir: dir, top: 10 });
    const second = await probeImages({ imagesDir: dir, top: 10 });
    expect(JSON.stringify(second.rows)).toBe(JSON.stringify(first.rows));
  });

  it('passes captions through by id and leaves the rest uncaptioned', async () => {
    const dir = imageDir();
    writePng(path.join(dir, 'a.png'), 1);
    writePng(path.join(dir, 'b.png'), 2);
    const captionsFile = path.join(dir, 'captions.jsonl');
    writeJsonlFile(captionsFile, [
      { id: 'a', caption: 'a dog with a ball' },
      { id: 'missing', caption: 'never used' },
    ]);
    const { rows } = await probeImages({ imagesDir: dir, top: 2, captionsFile });
    expect(rows[0].caption).toBe('a dog with a ball');
    expect(rows[1].caption).toBeUndefined();
  });

  it('rejects a top value outside [1, 1000]', async () => {
    const dir = imageDir();
    writePng(path.join(dir, 'a.png'));
    await expect(probeImages({ imagesDir: dir, top: 0 })).rejects.toThrow(/--top/);
  });

  it('rejects an unknown model name', async () => {
    const dir = imageDir();
    writePng(path.join(dir, 'a.png'));
    await expect(probeImages({ imagesDir: dir, model: 'resnet152-from-nowhere' })).rejects.toThrow(
      /unknown model/,
    );
  });
});
