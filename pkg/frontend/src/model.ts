/**
 * Sequence-to-sequence model: a bidirectional LSTM encoder and an LSTM
 * decoder that attends over all encoder states with a global dot-product
 * attention, trained with full teacher forcing.
 *
 * Output-side sequences are framed with BOS/EOS; PAD is id 0 on both sides
 * and is masked out of the loss and the attention scores. Training is a
 * custom loop (the optimizer needs gradient-norm clipping, which the stock
 * fit() path does not expose). Deterministic given the seed up to backend
 * numerics.
 */

import * as tf from '@tensorflow/tfjs';

import { TrainConfig } from './config.js';
import { Pair } from './dataset.js';

export const PAD = 0;
export const BOS = 1;
export const EOS = 2;

export interface Vocab {
  /** raw dataset tokens, sorted */
  tokens: number[];
  /** raw token -> model id (offset past the specials) */
  index: Map<number, number>;
  size: number;
}

export function makeVocab(tokens: number[]): Vocab {
  const sorted = [...tokens].sort((a, b) => a - b);
  const index = new Map<number, number>();
  sorted.forEach((t, i) => index.set(t, i + 3));
  return { tokens: sorted, index, size: sorted.length + 3 };
}

export function encodeInput(vocab: Vocab, tokens: number[]): number[] {
  return tokens.map((t) => {
    const id = vocab.index.get(t);
    if (id === undefined) throw new Error(`token ${t} not in the vocabulary`);
    return id;
  });
}

export function encodeTarget(vocab: Vocab, tokens: number[]): number[] {
  return [BOS, ...encodeInput(vocab, tokens), EOS];
}

function padTo(rows: number[][], width: number): number[][] {
  return rows.map((r) => [...r, ...new Array(width - r.length).fill(PAD)]);
}

export class Seq2Seq {
  readonly cfg: TrainConfig;
  readonly inVocab: Vocab;
  readonly outVocab: Vocab;
  private readonly encEmbed: tf.layers.Layer;
  private readonly decEmbed: tf.layers.Layer;
  private readonly encLstms: tf.layers.Layer[];
  private readonly decLstms: tf.layers.Layer[];
  private readonly drops: tf.layers.Layer[];
  private readonly combine: tf.layers.Layer;
  private readonly project: tf.layers.Layer;

  constructor(inVocab: Vocab, outVocab: Vocab, cfg: TrainConfig) {
    this.cfg = cfg;
    this.inVocab = inVocab;
    this.outVocab = outVocab;
    let seed = cfg.seed + 1;
    const next = () => seed++;
    const glorot = () => tf.initializers.glorotUniform({ seed: next() });
    this.encEmbed = tf.layers.embedding({
      inputDim: inVocab.size,
      outputDim: cfg.embedDim,
      embeddingsInitializer: glorot(),
      name: 'enc_embed',
    });
    this.decEmbed = tf.layers.embedding({
      inputDim: outVocab.size,
      outputDim: cfg.embedDim,
      embeddingsInitializer: glorot(),
      name: 'dec_embed',
    });
    const half = Math.max(1, Math.floor(cfg.hiddenSize / 2));
    this.encLstms = [];
    this.decLstms = [];
    this.drops = [];
    for (let i = 0; i < cfg.layers; i++) {
      this.encLstms.push(
        tf.layers.bidirectional({
          layer: tf.layers.lstm({
            units: half,
            returnSequences: true,
            kernelInitializer: glorot(),
            recurrentInitializer: tf.initializers.orthogonal({ seed: next() }),
          }) as tf.layers.RNN,
          mergeMode: 'concat',
          name: `enc_bilstm_${i}`,
        }),
      );
      this.decLstms.push(
        tf.layers.lstm({
          units: 2 * half,
          returnSequences: true,
          kernelInitializer: glorot(),
          recurrentInitializer: tf.initializers.orthogonal({ seed: next() }),
          name: `dec_lstm_${i}`,
        }),
      );
      this.drops.push(tf.layers.dropout({ rate: cfg.dropout, seed: next() }));
    }
    this.combine = tf.layers.dense({
      units: 2 * half,
      activation: 'tanh',
      kernelInitializer: glorot(),
      name: 'attn_combine',
    });
    this.project = tf.layers.dense({
      units: outVocab.size,
      kernelInitializer: glorot(),
      name: 'project',
    });
  }

  private allLayers(): tf.layers.Layer[] {
    return [
      this.encEmbed,
      this.decEmbed,
      ...this.encLstms,
      ...this.decLstms,
      this.combine,
      this.project,
    ];
  }

  /** Teacher-forced logits, [batch, targetLen, outVocab]. */
  forward(encIn: tf.Tensor2D, decIn: tf.Tensor2D, training: boolean): tf.Tensor3D {
    return tf.tidy(() => {
      const kwargs = { training };
      // explicit pad masks: the backward encoder direction must skip padding,
      // or padded training batches and unpadded decoding would disagree
      const encMask = tf.notEqual(encIn, PAD);
      const decMask = tf.notEqual(decIn, PAD);
      let enc = this.encEmbed.apply(encIn) as tf.Tensor3D;
      for (let i = 0; i < this.encLstms.length; i++) {
        enc = this.encLstms[i].apply(enc, { ...kwargs, mask: encMask }) as tf.Tensor3D;
        if (i + 1 < this.encLstms.length) {
          enc = this.drops[i].apply(enc, kwargs) as tf.Tensor3D;
        }
      }
      let dec = this.decEmbed.apply(decIn) as tf.Tensor3D;
      for (let i = 0; i < this.decLstms.length; i++) {
        dec = this.decLstms[i].apply(dec, { ...kwargs, mask: decMask }) as tf.Tensor3D;
        if (i + 1 < this.decLstms.length) {
          dec = this.drops[i].apply(dec, kwargs) as tf.Tensor3D;
        }
      }
      // global attention: every decoder step scores every encoder step
      const scores = tf.matMul(dec, enc, false, true); // [B, Tdec, Tenc]
      const tDec = scores.shape[1] ?? 1;
      const encPad = tf.equal(encIn, PAD).expandDims(1); // [B, 1, Tenc]
      const masked = tf.where(
        tf.tile(encPad, [1, tDec, 1]),
        tf.fill(scores.shape, -1e9),
        scores,
      );
      const weights = tf.softmax(masked, -1);
      const context = tf.matMul(weights, enc); // [B, Tdec, H]
      const mixed = this.combine.apply(tf.concat([context, dec], -1)) as tf.Tensor3D;
      return this.project.apply(mixed) as tf.Tensor3D;
    });
  }

  /** Masked cross entropy over the shifted target. */
  loss(encIn: tf.Tensor2D, decIn: tf.Tensor2D, decTarget: tf.Tensor2D): tf.Scalar {
    return tf.tidy(() => {
      const logits = this.forward(encIn, decIn, true);
      const mask = tf.notEqual(decTarget, PAD).cast('float32');
      const oneHot = tf.oneHot(decTarget.cast('int32'), this.outVocab.size);
      const perTok = tf.losses.softmaxCrossEntropy(
        oneHot,
        logits,
        undefined,
        undefined,
        tf.Reduction.NONE,
      );
      const total = tf.sum(tf.mul(perTok, mask));
      return tf.div(total, tf.maximum(tf.sum(mask), 1)) as tf.Scalar;
    });
  }

  /** One optimizer step on a batch; returns the scalar loss. */
  trainStep(
    optimizer: tf.Optimizer,
    encIn: tf.Tensor2D,
    decIn: tf.Tensor2D,
    decTarget: tf.Tensor2D,
  ): number {
    const { value, grads } = tf.variableGrads(() => this.loss(encIn, decIn, decTarget));
    tf.tidy(() => {
      const names = Object.keys(grads);
      const norm = tf.sqrt(
        tf.addN(names.map((n) => tf.sum(tf.square(grads[n])))),
      );
      const clip = this.cfg.gradClipNorm;
      const scale = tf.minimum(tf.scalar(1), tf.div(tf.scalar(clip), tf.maximum(norm, 1e-12)));
      const clipped: tf.NamedTensorMap = {};
      for (const n of names) clipped[n] = tf.mul(grads[n], scale);
      optimizer.applyGradients(clipped);
    });
    const loss = value.dataSync()[0];
    value.dispose();
    tf.dispose(grads);
    return loss;
  }

  /** Greedy decode by prefix re-forwarding; fine at desk scale. */
  predict(input: number[], maxLen: number): number[] {
    const encRow = encodeInput(this.inVocab, input);
    const enc = tf.tensor2d([encRow.length ? encRow : [PAD]], undefined, 'int32');
    const prefix: number[] = [BOS];
    const reverse = new Map<number, number>();
    for (const [tok, id] of this.outVocab.index) reverse.set(id, tok);
    const out: number[] = [];
    for (let step = 0; step < maxLen; step++) {
      const next: number = tf.tidy(() => {
        const dec = tf.tensor2d([prefix], undefined, 'int32');
        const logits = this.forward(enc as tf.Tensor2D, dec as tf.Tensor2D, false);
        const last = logits
          .slice([0, prefix.length - 1, 0], [1, 1, this.outVocab.size])
          .reshape([this.outVocab.size]);
        return last.argMax().dataSync()[0] as number;
      });
      if (next === EOS || next === PAD) break;
      prefix.push(next);
      const tok = reverse.get(next);
      out.push(tok === undefined ? -1 : tok);
    }
    enc.dispose();
    return out;
  }

  /** Pad and tensorize a batch of pairs into (encIn, decIn, decTarget). */
  batchTensors(batch: Pair[]): [tf.Tensor2D, tf.Tensor2D, tf.Tensor2D] {
    const encRows = batch.map((p) => {
      const row = encodeInput(this.inVocab, p.input);
      return row.length ? row : [PAD];
    });
    const framed = batch.map((p) => encodeTarget(this.outVocab, p.output));
    const decInRows = framed.map((r) => r.slice(0, -1));
    const decTargetRows = framed.map((r) => r.slice(1));
    const encW = Math.max(...encRows.map((r) => r.length));
    const decW = Math.max(...decInRows.map((r) => r.length));
    return [
      tf.tensor2d(padTo(encRows, encW), undefined, 'int32'),
      tf.tensor2d(padTo(decInRows, decW), undefined, 'int32'),
      tf.tensor2d(padTo(decTargetRows, decW), undefined, 'int32'),
    ];
  }

  /** Build every layer's variables with one dummy pass. */
  warmUp(): void {
    const enc = tf.tensor2d([[PAD]], undefined, 'int32');
    const dec = tf.tensor2d([[BOS]], undefined, 'int32');
    this.forward(enc, dec, false).dispose();
    enc.dispose();
    dec.dispose();
  }

  getWeightArrays(): { shape: number[]; values: number[] }[] {
    const out: { shape: number[]; values: number[] }[] = [];
    for (const layer of this.allLayers()) {
      for (const w of layer.getWeights()) {
        out.push({ shape: w.shape.slice(), values: Array.from(w.dataSync()) });
      }
    }
    return out;
  }

  setWeightArrays(stored: { shape: number[]; values: number[] }[]): void {
    let at = 0;
    for (const layer of this.allLayers()) {
      const current = layer.getWeights();
      const next = current.map(() => {
        const { shape, values } = stored[at++];
        return tf.tensor(values, shape);
      });
      layer.setWeights(next);
      next.forEach((t) => t.dispose());
    }
    if (at !== stored.length) {
      throw new Error(`weight count mismatch: used ${at} of ${stored.length}`);
    }
  }
}
