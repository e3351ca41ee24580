export { decodeImageFile, toInputTensor, DecodedImage } from './image';
export { imagenetLabels } from './labels';
export { Classifier, DEFAULT_MODEL, loadClassifier } from './model';
export {
  ClassEntry,
  ProbeOptions,
  ProbeResult,
  ProbeRow,
  listImageFiles,
  loadCaptions,
  probeImages,
  topClasses,
  writeJsonl,
} from './probe';
export { MergeResult, loadGoldLabels, mergeGold } from './mergeGold';
