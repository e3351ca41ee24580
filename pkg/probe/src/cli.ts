#!/usr/bin/env node
import yargs from 'yargs';
import { hideBin } from 'yargs/helpers';
import { mergeGold } from './mergeGold';
import { probeImages, writeJsonl } from './probe';
import { DEFAULT_MODEL } from './model';

async function main(): Promise<void> {
  await yargs(hideBin(process.argv))
    .scriptName('probe')
    .command(
      '$0',
      'classify every image in a directory and export top-N class probabilities as query JSONL',
      (y) =>
        y
          .option('images', { type: 'string', demandOption: true, describe: 'directory of .png/.jpg images' })
          .option('out', { type: 'string', demandOption: true, describe: 'output JSONL path' })
          .option('top', { type: 'number', default: 10, describe: 'classes exported per image' })
          .option('captions', { type: 'string', describe: 'JSONL of {"id","caption"} to pass through' })
          .option('model', { type: 'string', default: DEFAULT_MODEL, describe: `'${DEFAULT_MODEL}' or a TFJS Layers model directory` }),
      async (argv) => {
        const { rows, skipped } = await probeImages({
          imagesDir: argv.images,
          top: argv.top,
          captionsFile: argv.captions,
          model: argv.model,
        });
        writeJsonl(rows, argv.out);
        console.log(`wrote ${rows.length} rows to ${argv.out} (${skipped.length} skipped)`);
      },
    )
    .command(
      'merge-gold',
      'join gold emoji codepoints onto probe output by image id',
      (y) =>
        y
          .option('probe', { type: 'string', demandOption: true, describe: 'probe output JSONL' })
          .option('labels', { type: 'string', demandOption: true, describe: 'JSONL of {"id","gold"}' })
          .option('out', { type: 'string', demandOption: true, describe: 'labeled query JSONL path' }),
      (argv) => {
        const { rows, unmatched } = mergeGold(argv.probe, argv.labels);
        writeJsonl(rows, argv.out);
        for (const id of unmatched) {
          console.error(`no gold label for ${id}`);
        }
        console.log(`wrote ${rows.length} labeled queries to ${argv.out} (${unmatched.length} unmatched)`);
      },
    )
    .demandCommand(0)
    .strict()
    .fail((msg, err) => {
      console.error(`error: ${msg ?? err?.message}`);
      process.exit(2);
    })
    .parseAsync();
}

main().catch((err) => {
  console.error(`error: ${err instanceof Error ? err.message : err}`);
  process.exit(1);
});
