import * as fs from 'fs';
import * as path from 'path';
import * as tf from '@tensorflow/tfjs';

export const DEFAULT_MODEL = 'tiny-cnn';

export interface Classifier {
  name: string;
  inputSize: number;
  /**
   * Returns 1000 class probabilities (softmax output), index-aligned with
   * the ImageNet-1k label list.
   */
  classify(image: tf.Tensor3D): Promise<Float32Array>;
}

/** Deterministic 32-bit PRNG so the fallback model is identical everywhere. */
function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a |= 0;
    a = (a + 0x6d2b79f5) | 0;
    let t = Math.imul(a ^ (a >>> 15), 1 | a);
    t = (t + Math.imul(t ^ (t >>> 7), 61 | t)) ^ t;
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

function seededTensor(shape: number[], fanIn: number, rand: () => number): tf.Tensor {
  const n = shape.reduce((a, b) => a * b, 1);
  const scale = Math.sqrt(2 / fanIn);
  const data = new Float32Array(n);
  for (let i = 0; i < n; i++) {
    data[i] = (rand() * 2 - 1) * scale;
  }
  return tf.tensor(data, shape);
}

/**
 * Small seeded CNN over the ImageNet-1k label space. The weights are
 * pseudo-random but fixed, so its predictions carry no semantics — it
 * exists to exercise the full export pipeline offline with byte-stable
 * output. Swap in a real network via a TFJS Layers model directory.
 */
class TinyCnn implements Classifier {
  name = DEFAULT_MODEL;
  inputSize = 64;
  private conv1: tf.Tensor;
  private conv2: tf.Tensor;
  private dense: tf.Tensor;
  private bias: tf.Tensor;

  constructor(seed = 0x5eed) {
    const rand = mulberry32(seed);
    this.conv1 = seededTensor([3, 3, 3, 8], 3 * 3 * 3, rand);
    this.conv2 = seededTensor([3, 3, 8, 16], 3 * 3 * 8, rand);
    this.dense = seededTensor([16, 1000], 16, rand);
    this.bias = seededTensor([1000], 16, rand);
  }

  async classify(image: tf.Tensor3D): Promise<Float32Array> {
    const probs = tf.tidy(() => {
      let x = tf.expandDims(image, 0) as tf.Tensor4D;
      x = tf.relu(tf.conv2d(x, this.conv1 as tf.Tensor4D, 2, 'same'));
      x = tf.relu(tf.conv2d(x, this.conv2 as tf.Tensor4D, 2, 'same'));
      const features = tf.mean(x, [1, 2]);
      const logits = tf.add(tf.matMul(features, this.dense as tf.Tensor2D), this.bias);
      return tf.softmax(logits);
    });
    const data = (await probs.data()) as Float32Array;
    probs.dispose();
    return data;
  }
}

class LayersClassifier implements Classifier {
  name: string;
  inputSize: number;

  constructor(private model: tf.LayersModel, name: string) {
    this.name = name;
    const shape = model.inputs[0].shape;
    this.inputSize = typeof shape[1] === 'number' ? shape[1] : 224;
  }

  async classify(image: tf.Tensor3D): Promise<Float32Array> {
    const probs = tf.tidy(() => {
      const batched = tf.expandDims(image, 0);
      const out = this.model.predict(batched) as tf.Tensor;
      return tf.softmax(tf.squeeze(out));
    });
    const data = (await probs.data()) as Float32Array;
    probs.dispose();
    if (data.length !== 1000) {
      throw new Error(`model ${this.name} outputs ${data.length} classes, expected 1000`);
    }
    return data;
  }
}

/** Reads a TFJS Layers model (model.json + weight shards) from a directory. */
async function loadLayersModelDir(dir: string): Promise<tf.LayersModel> {
  const manifest = JSON.parse(fs.readFileSync(path.join(dir, 'model.json'), 'utf-8'));
  const handler: tf.io.IOHandler = {
    load: async () => {
      const weightSpecs: tf.io.WeightsManifestEntry[] = [];
      const shards: Buffer[] = [];
      for (const group of manifest.weightsManifest ?? []) {
        weightSpecs.push(...group.weights);
        for (const p of group.paths) {
          shards.push(fs.readFileSync(path.join(dir, p)));
        }
      }
      const blob = Buffer.concat(shards);
      return {
        modelTopology: manifest.modelTopology,
        weightSpecs,
        weightData: blob.buffer.slice(blob.byteOffset, blob.byteOffset + blob.byteLength),
      };
    },
  };
  return tf.loadLayersModel(handler);
}

/**
 * Resolves a --model argument: the built-in name, or a path to a TFJS
 * Layers model directory (the model should emit logits; softmax is
 * applied on top).
 */
export async function loadClassifier(name: string = DEFAULT_MODEL): Promise<Classifier> {
  if (name === DEFAULT_MODEL) {
    return new TinyCnn();
  }
  if (fs.existsSync(path.join(name, 'model.json'))) {
    return new LayersClassifier(await loadLayersModelDir(name), path.basename(name));
  }
  throw new Error(`unknown model '${name}': expected '${DEFAULT_MODEL}' or a TFJS Layers model directory`);
}
