export { render, renderSvg } from "./render.js";
export type { FigureKind, FigureSpec, RenderResult } from "./render.js";
export {
  PROFILE_COLUMNS,
  TMI_COLUMNS,
  SchemaError,
  readProfileCsv,
  readTmiCsv,
} from "./schema.js";
export type { ProfileRow, TmiRow } from "./schema.js";
export { STYLE_VERSION } from "./style.js";
