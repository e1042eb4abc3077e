/**
 * Command-line entry points.
 *
 *   train    --data train.tsv --preset desk [--steps N --seed S ...]
 *            --model model.json --metrics metrics.txt
 *   evaluate --model model.json --test test.tsv --out report.txt
 *            [--machine m.sfst --train train.tsv]   (adds the coverage join)
 */

import * as fs from 'node:fs';

import yargs from 'yargs';
import { hideBin } from 'yargs/helpers';

import { PRESETS, TrainConfig, resolveConfig } from './config.js';
import { parseDataset } from './dataset.js';
import { parseMachine } from './machine.js';
import { evaluationReport } from './evaluate.js';
import { SavedModel, loadModel, saveModel, trainModel } from './train.js';

function overridesFrom(argv: Record<string, unknown>): Partial<TrainConfig> {
  const out: Partial<TrainConfig> = {};
  if (argv.steps !== undefined) out.steps = Number(argv.steps);
  if (argv.seed !== undefined) out.seed = Number(argv.seed);
  if (argv.batchSize !== undefined) out.batchSize = Number(argv.batchSize);
  if (argv.hiddenSize !== undefined) out.hiddenSize = Number(argv.hiddenSize);
  if (argv.embedDim !== undefined) out.embedDim = Number(argv.embedDim);
  if (argv.evalEvery !== undefined) out.evalEvery = Number(argv.evalEvery);
  return out;
}

export async function main(argvIn: string[]): Promise<number> {
  const argv = await yargs(argvIn)
    .command('train', 'train a model on a dataset file', (y) =>
      y
        .option('data', { type: 'string', demandOption: true })
        .option('preset', { type: 'string', default: 'desk', choices: Object.keys(PRESETS) })
        .option('steps', { type: 'number' })
        .option('seed', { type: 'number' })
        .option('batch-size', { type: 'number' })
        .option('hidden-size', { type: 'number' })
        .option('embed-dim', { type: 'number' })
        .option('eval-every', { type: 'number' })
        .option('model', { type: 'string', demandOption: true })
        .option('metrics', { type: 'string', demandOption: true }),
    )
    .command('evaluate', 'report accuracy of a saved model on a test file', (y) =>
      y
        .option('model', { type: 'string', demandOption: true })
        .option('test', { type: 'string', demandOption: true })
        .option('machine', { type: 'string' })
        .option('train', { type: 'string' })
        .option('out', { type: 'string', demandOption: true }),
    )
    .demandCommand(1)
    .strict()
    .parse();

  const command = argv._[0];
  if (command === 'train') {
    const cfg = resolveConfig(argv.preset as string, overridesFrom(argv));
    const data = parseDataset(fs.readFileSync(argv.data as string, 'utf-8'));
    if (data.pairs.length === 0) throw new Error('empty dataset');
    const { model, metrics } = trainModel(data.pairs, cfg);
    fs.writeFileSync(argv.model as string, JSON.stringify(saveModel(model)));
    fs.writeFileSync(argv.metrics as string, metrics);
    process.stdout.write(metrics.split('\n').slice(-2).join('\n') + '\n');
    return 0;
  }
  if (command === 'evaluate') {
    const saved = JSON.parse(fs.readFileSync(argv.model as string, 'utf-8')) as SavedModel;
    const model = loadModel(saved);
    const test = parseDataset(fs.readFileSync(argv.test as string, 'utf-8'));
    let join;
    if (argv.machine !== undefined && argv.train !== undefined) {
      join = {
        machine: parseMachine(fs.readFileSync(argv.machine as string, 'utf-8')),
        trainPairs: parseDataset(fs.readFileSync(argv.train as string, 'utf-8')).pairs,
      };
    }
    const report = evaluationReport(model, test.pairs, join);
    fs.writeFileSync(argv.out as string, report);
    process.stdout.write(report);
    return 0;
  }
  throw new Error(`unknown command ${command}`);
}

const invokedDirectly =
  process.argv[1] !== undefined && import.meta.url.endsWith(process.argv[1].split('/').pop()!);
if (invokedDirectly) {
  main(hideBin(process.argv)).then(
    (code) => process.exit(code),
    (err) => {
      console.error(String(err?.message ?? err));
      process.exit(1);
    },
  );
}
