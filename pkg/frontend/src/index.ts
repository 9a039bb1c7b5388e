export {
  FIT_HEADER,
  SWEEP_HEADER,
  readFitCsv,
  readSweepCsv,
  readTable,
  type FitRow,
  type SweepRow,
  type Table,
} from "./csv.js";
export {
  fitPowerLaw,
  powerLawValue,
  softplusPrimitive,
  type PowerLaw,
} from "./model.js";
export {
  renderFigure,
  sigmoidOverlayPoints,
  type FigureSpec,
  type OverlaySpec,
  type PanelSpec,
} from "./figure.js";
export {
  dashedPath,
  fmt,
  makeScale,
  pathFrom,
  tickLabel,
  ticks,
  type Point,
  type Scale,
  type ScaleKind,
} from "./svg.js";
