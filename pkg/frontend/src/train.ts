/**
 * Training loop: seeded batching, adam with gradient-norm clipping, and
 * periodic token/sequence accuracy logging as key=value metric lines.
 */

import * as tf from '@tensorflow/tfjs';

import { TrainConfig, echoConfig } from './config.js';
import { Pair, induceVocab } from './dataset.js';
import { Seq2Seq, makeVocab } from './model.js';

/** Small deterministic RNG for shuffling and batch picks. */
export function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) >>> 0;
    let t = a;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

export interface EvalResult {
  sequenceAccuracy: number;
  tokenAccuracy: number;
}

/** Greedy-decode accuracy over (a sample of) pairs. */
export function evaluatePairs(model: Seq2Seq, pairs: Pair[], sample?: number): EvalResult {
  const subset = sample !== undefined && pairs.length > sample ? pairs.slice(0, sample) : pairs;
  if (subset.length === 0) throw new Error('empty evaluation set');
  let exact = 0;
  let tokenHits = 0;
  let tokenTotal = 0;
  for (const p of subset) {
    const maxLen = Math.max(4, 2 * p.output.length + 8);
    let got: number[];
    try {
      got = model.predict(p.input, maxLen);
    } catch {
      got = []; // input tokens outside the training vocabulary
    }
    if (got.length === p.output.length && got.every((t, i) => t === p.output[i])) {
      exact += 1;
    }
    tokenTotal += p.output.length;
    for (let i = 0; i < p.output.length; i++) {
      if (got[i] === p.output[i]) tokenHits += 1;
    }
  }
  return {
    sequenceAccuracy: exact / subset.length,
    tokenAccuracy: tokenTotal === 0 ? 1 : tokenHits / tokenTotal,
  };
}

export interface TrainResult {
  model: Seq2Seq;
  metrics: string;
}

export function trainModel(pairs: Pair[], cfg: TrainConfig): TrainResult {
  if (pairs.length === 0) throw new Error('empty dataset');
  const inVocab = makeVocab(induceVocab(pairs, 'input'));
  const outVocab = makeVocab(induceVocab(pairs, 'output'));
  const model = new Seq2Seq(inVocab, outVocab, cfg);
  model.warmUp();
  const optimizer = tf.train.adam(cfg.learningRate);
  const rand = mulberry32(cfg.seed + 7);

  const lines: string[] = [];
  lines.push('# train config');
  lines.push(echoConfig(cfg));
  lines.push(`input_vocab=${inVocab.size}`);
  lines.push(`output_vocab=${outVocab.size}`);
  lines.push(`training_pairs=${pairs.length}`);

  const order = pairs.map((_, i) => i);
  let cursor = order.length; // force an initial shuffle
  const nextBatch = (): Pair[] => {
    const batch: Pair[] = [];
    for (let k = 0; k < cfg.batchSize; k++) {
      if (cursor >= order.length) {
        for (let i = order.length - 1; i > 0; i--) {
          const j = Math.floor(rand() * (i + 1));
          [order[i], order[j]] = [order[j], order[i]];
        }
        cursor = 0;
      }
      batch.push(pairs[order[cursor++]]);
    }
    return batch;
  };

  let runningLoss = 0;
  let lossCount = 0;
  for (let step = 1; step <= cfg.steps; step++) {
    const [encIn, decIn, decTarget] = model.batchTensors(nextBatch());
    runningLoss += model.trainStep(optimizer, encIn, decIn, decTarget);
    lossCount += 1;
    encIn.dispose();
    decIn.dispose();
    decTarget.dispose();
    if (step % cfg.evalEvery === 0 || step === cfg.steps) {
      const acc = evaluatePairs(model, pairs, cfg.evalSample);
      lines.push(
        `step=${step} loss=${(runningLoss / lossCount).toFixed(4)} ` +
          `token_accuracy=${acc.tokenAccuracy.toFixed(4)} ` +
          `sequence_accuracy=${acc.sequenceAccuracy.toFixed(4)}`,
      );
      runningLoss = 0;
      lossCount = 0;
    }
  }
  optimizer.dispose();
  return { model, metrics: lines.join('\n') + '\n' };
}

export interface SavedModel {
  config: TrainConfig;
  inputTokens: number[];
  outputTokens: number[];
  weights: { shape: number[]; values: number[] }[];
}

export function saveModel(model: Seq2Seq): SavedModel {
  return {
    config: model.cfg,
    inputTokens: model.inVocab.tokens,
    outputTokens: model.outVocab.tokens,
    weights: model.getWeightArrays(),
  };
}

export function loadModel(saved: SavedModel): Seq2Seq {
  const model = new Seq2Seq(makeVocab(saved.inputTokens), makeVocab(saved.outputTokens),
                            saved.config);
  model.warmUp();
  model.setWeightArrays(saved.weights);
  return model;
}
