import { App } from "./app.js";

const base = new URLSearchParams(location.search).get("service") ??
  `${location.protocol}//${location.hostname}:7420`;

new App(base);
