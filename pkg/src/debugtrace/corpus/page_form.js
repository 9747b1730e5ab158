Page({
  data: {
    fields: { name: "", email: "" },
    errors: []
  },
  onInput: function (e) {
    var key = e.currentTarget.dataset.field;
    var patch = {};
    patch["fields." + key] = e.detail.value;
    this.setData(patch);
  },
  validate: function () {
    var errors = [];
    if (this.data.fields.name === "") {
      errors[errors.length] = "name required";
    }
    if (this.data.fields.email.indexOf("@") < 0) {
      errors[errors.length] = "email invalid";
    }
    this.setData({ errors: errors });
    return errors.length === 0;
  },
  submit: function () {
    if (!this.validate()) {
      return;
    }
    wx.request({
      url: "https://api.example.com/register",
      data: this.data.fields,
      success: () => {
        wx.showToast({ title: "ok" });
      }
    });
  }
});
